#include "nil2/catalog.hpp"

#include <cctype>
#include <stdexcept>

namespace nil2 {

namespace {

Word gen(std::size_t i) { return Word::make_gen(i); }
Word pw(Word w, int64_t e) { return Word::power(std::move(w), e); }
Word br(std::size_t a, std::size_t b) {
  return Word::bracket(Word::make_gen(a), Word::make_gen(b));
}

u32 p_power(u32 p, u32 e) {
  u32 r = 1;
  for (u32 i = 0; i < e; ++i) r *= p;
  return r;
}

void check_odd_prime(u32 p) {
  if (p < 2) throw std::invalid_argument("catalog: p must be prime");
  for (u32 d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("catalog: p must be prime");
}

NamedPresentation named(std::string name, Presentation pres) {
  return NamedPresentation{std::move(name), std::move(pres)};
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries{
      {"cant(p,n)",
       "<x,y | x^{p^n}, y^{p^n}, [x,y]^{p^{n-1}}>: absolutely closed in "
       "exponent p^n but not in p^{n+1}"},
      {"heisenberg(p)", "<x,y | x^p, y^p, [x,y]^p>: extraspecial of order p^3"},
      {"free(k,p,n)", "relatively free group on k generators, exponent p^n"},
      {"higgins(p)",
       "<x,y,z | x^p,y^p,z^p,[x,y]^p,[x,z],[y,z]>: absolutely closed with a "
       "non-closed abelianization"},
      {"e4", "<a,b,c | a^4,b^4,c^4,[a,b]^2,[a,c],[b,c], c^2 = [a,b]>: the "
             "exponent-4 example"},
      {"cyclic(p,n)", "Z/p^n inside the exponent-p^n variety"},
      {"abelian(p,n,e1,...)", "direct sum of Z/p^{e_i} inside exponent p^n"},
  };
  return entries;
}

bool is_catalog_ref(const std::string& ref) {
  if (ref == "e4") return true;
  auto open = ref.find('(');
  if (open == std::string::npos || ref.back() != ')') return false;
  for (const auto& e : catalog_entries())
    if (e.signature.substr(0, e.signature.find('(')) == ref.substr(0, open))
      return true;
  return false;
}

NamedPresentation catalog_lookup(const std::string& ref) {
  std::string name = ref;
  std::vector<u32> args;
  auto open = ref.find('(');
  if (open != std::string::npos) {
    if (ref.back() != ')') throw std::invalid_argument("catalog: bad reference");
    name = ref.substr(0, open);
    std::string inner = ref.substr(open + 1, ref.size() - open - 2);
    std::size_t pos = 0;
    while (pos < inner.size()) {
      std::size_t next = inner.find(',', pos);
      if (next == std::string::npos) next = inner.size();
      args.push_back(static_cast<u32>(std::stoul(inner.substr(pos, next - pos))));
      pos = next + 1;
    }
  }

  auto want = [&](std::size_t lo, std::size_t hi = 0) {
    if (args.size() < lo || (hi && args.size() > hi))
      throw std::invalid_argument("catalog: wrong number of arguments for " + name);
  };

  if (name == "cant") {
    want(2, 2);
    u32 p = args[0], n = args[1];
    check_odd_prime(p);
    u32 q = p_power(p, n);
    Presentation pres{Variety::make(p, n),
                      {"x", "y"},
                      {pw(gen(0), q), pw(gen(1), q), pw(br(0, 1), q / p)}};
    return named(ref, std::move(pres));
  }
  if (name == "heisenberg") {
    want(1, 1);
    u32 p = args[0];
    check_odd_prime(p);
    Presentation pres{Variety::make(p, 1),
                      {"x", "y"},
                      {pw(gen(0), p), pw(gen(1), p), pw(br(0, 1), p)}};
    return named(ref, std::move(pres));
  }
  if (name == "free") {
    want(3, 3);
    u32 k = args[0], p = args[1], n = args[2];
    check_odd_prime(p);
    if (k < 1 || k > 26) throw std::invalid_argument("catalog: free rank out of range");
    Presentation pres;
    pres.v = Variety::make(p, n);
    for (u32 i = 0; i < k; ++i) pres.names.push_back(std::string(1, char('a' + i)));
    return named(ref, std::move(pres));
  }
  if (name == "higgins") {
    want(1, 1);
    u32 p = args[0];
    check_odd_prime(p);
    Presentation pres{Variety::make(p, 1),
                      {"x", "y", "z"},
                      {pw(gen(0), p), pw(gen(1), p), pw(gen(2), p),
                       pw(br(0, 1), p), br(0, 2), br(1, 2)}};
    return named(ref, std::move(pres));
  }
  if (name == "e4") {
    Presentation pres{Variety::make(2, 2),
                      {"a", "b", "c"},
                      {pw(gen(0), 4), pw(gen(1), 4), pw(gen(2), 4),
                       pw(br(0, 1), 2), br(0, 2), br(1, 2),
                       Word::concat({pw(gen(2), 2), pw(br(0, 1), -1)})}};
    return named("e4", std::move(pres));
  }
  if (name == "cyclic") {
    want(2, 2);
    u32 p = args[0], n = args[1];
    check_odd_prime(p);
    Presentation pres{Variety::make(p, n), {"x"}, {pw(gen(0), p_power(p, n))}};
    return named(ref, std::move(pres));
  }
  if (name == "abelian") {
    want(3);
    u32 p = args[0], n = args[1];
    check_odd_prime(p);
    Presentation pres;
    pres.v = Variety::make(p, n);
    for (std::size_t i = 2; i < args.size(); ++i) {
      if (args[i] > n)
        throw std::invalid_argument("catalog: abelian factor exceeds the exponent");
      pres.names.push_back("x" + std::to_string(i - 2));
      pres.relators.push_back(pw(gen(i - 2), p_power(p, args[i])));
    }
    for (std::size_t j = 1; j < pres.names.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) pres.relators.push_back(br(j, i));
    return named(ref, std::move(pres));
  }
  throw std::invalid_argument("catalog: unknown group '" + name + "'");
}

std::vector<std::string> paper_catalog_refs() {
  return {"cant(3,1)",        "cant(3,2)",        "heisenberg(3)",
          "free(1,3,2)",      "free(2,3,1)",      "free(2,3,2)",
          "higgins(3)",       "cyclic(3,2)",      "abelian(3,2,1,1)",
          "abelian(3,2,2,2)", "abelian(3,2,2,1)", "abelian(3,1,1,1,1)"};
}

}  // namespace nil2
