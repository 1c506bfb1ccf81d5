#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "nil2/enumerate.hpp"
#include "nil2/fp_group.hpp"

using namespace nil2;

namespace {

Presentation pres(u32 p, u32 n, std::vector<std::string> names,
                  std::vector<Word> rels) {
  return Presentation{Variety::make(p, n), std::move(names), std::move(rels)};
}

Word gen(std::size_t i) { return Word::make_gen(i); }
Word pw(Word w, int64_t e) { return Word::power(std::move(w), e); }
Word br(Word a, Word b) { return Word::bracket(std::move(a), std::move(b)); }

// cant(p,n) = <x,y | x^{p^n}, y^{p^n}, [x,y]^{p^{n-1}}>
GroupPtr cant(u32 p, u32 n) {
  u32 q = 1;
  for (u32 i = 0; i < n; ++i) q *= p;
  return FpGroup::build(pres(
      p, n, {"x", "y"},
      {pw(gen(0), q), pw(gen(1), q), pw(br(gen(0), gen(1)), q / p)}));
}

GroupPtr heisenberg(u32 p) {
  return FpGroup::build(pres(p, 1, {"x", "y"},
                             {pw(gen(0), p), pw(gen(1), p), pw(br(gen(0), gen(1)), p)}));
}

GroupPtr relfree(std::size_t k, u32 p, u32 n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back(std::string(1, char('a' + i)));
  return FpGroup::build(pres(p, n, std::move(names), {}));
}

}  // namespace

TEST_CASE("build_group: pinned orders") {
  auto c9 = FpGroup::build(pres(3, 2, {"x"}, {pw(gen(0), 9)}));
  CHECK(c9->order_u64() == 9);

  auto h = heisenberg(3);
  CHECK(h->order_u64() == 27);
  // independent closure oracle
  CHECK(closure_count(*h, {h->gen(0), h->gen(1)}, 1000) == 27);

  auto g = cant(3, 2);
  CHECK(g->order_u64() == 243);  // 3^5
  CHECK(closure_count(*g, {g->gen(0), g->gen(1)}, 1000) == 243);
}

TEST_CASE("reduce: pinned examples in cant(3,2)") {
  auto g = cant(3, 2);
  CHECK(g->is_identity(g->eval(pw(gen(0), 9))));
  CHECK(g->is_identity(g->eval(pw(br(gen(0), gen(1)), 3))));
  CHECK_FALSE(g->is_identity(g->eval(br(gen(0), gen(1)))));
  // reduce is idempotent and path-independent: multiplying by relator-span
  // elements does not change the canonical form
  std::mt19937 rng(31);
  for (int it = 0; it < 50; ++it) {
    FreeElement raw = g->f.identity();
    for (auto& x : raw.a) x = rng() % 9;
    for (auto& x : raw.c) x = rng() % 9;
    Elt e = g->reduce(raw);
    CHECK(g->reduce(e) == e);
    for (const auto& rho : g->relator_elts) {
      CHECK(g->reduce(g->f.mul(raw, rho)) == e);
      CHECK(g->reduce(g->f.mul(rho, raw)) == e);
    }
  }
}

TEST_CASE("subgroup: pinned examples") {
  auto a = relfree(2, 3, 3);  // F(2,3,3), order 27^3
  auto h = subgroup(a, {a->pow(a->gen(0), 3), a->pow(a->gen(1), 3)});
  CHECK(h.order_exp == 5);  // order 3^5 = 243
  CHECK(closure_count(*a, h.gens, 1000) == 243);

  auto t = trivial_subgroup(a);
  CHECK(t.order_exp == 0);
  CHECK(t.contains(a->identity()));
  CHECK_FALSE(t.contains(a->gen(0)));

  auto full = full_subgroup(a);
  CHECK(full.order_exp == a->order_exp);
}

TEST_CASE("hom: cant(3,2) embeds in F(2,3,3) via x->a^3, y->b^3") {
  auto g = cant(3, 2);
  auto a = relfree(2, 3, 3);
  auto m = hom(g, a, {a->pow(a->gen(0), 3), a->pow(a->gen(1), 3)});
  CHECK(is_injective(m));
  CHECK(image_subgroup(m).order_exp == 5);
}

TEST_CASE("hom: cross-exponent examples and failures") {
  auto c9 = FpGroup::build(pres(3, 2, {"x"}, {pw(gen(0), 9)}));
  auto c3 = FpGroup::build(pres(3, 1, {"x"}, {pw(gen(0), 3)}));
  // Z/9 -> Z/3, generator to generator: a homomorphism, not injective
  auto m = hom(c9, c3, {c3->gen(0)});
  CHECK_FALSE(is_injective(m));
  // Z/3 -> Z/9 sending generator to generator is not a homomorphism
  CHECK_THROWS_AS(hom(c3, c9, {c9->gen(0)}), not_homomorphism);
  // identity map is injective
  auto id = hom(c9, c9, {c9->gen(0)});
  CHECK(is_injective(id));
}

TEST_CASE("center: pinned examples") {
  auto h = heisenberg(3);
  auto z = center(h);
  auto dh = derived_subgroup(h);
  CHECK(z.order_exp == 1);  // order 3
  CHECK(sub_equal(z, dh));

  auto ab = FpGroup::build(pres(3, 2, {"x", "y"},
                                {pw(gen(0), 9), pw(gen(1), 9), br(gen(0), gen(1))}));
  CHECK(center(ab).order_exp == ab->order_exp);

  auto f22 = relfree(2, 3, 2);
  auto z22 = center(f22);
  CHECK(z22.order_exp == 2);  // order 9
  CHECK(sub_equal(z22, derived_subgroup(f22)));
}

TEST_CASE("center agrees with enumeration on small groups") {
  for (auto g : {heisenberg(3), cant(3, 2), relfree(2, 3, 2)}) {
    auto z = center(g);
    auto all = enumerate_group(*g, 100000);
    std::set<std::pair<Vec, Vec>> brute;
    for (const auto& e : all) {
      bool central = true;
      for (std::size_t i = 0; i < g->rank() && central; ++i)
        central = g->is_identity(g->comm(e, g->gen(i)));
      if (central) brute.insert({e.a, e.c});
    }
    CHECK(brute.size() == (u64(1) << 0) * [&] {
      u64 r = 1;
      for (u32 i = 0; i < z.order_exp; ++i) r *= 3;
      return r;
    }());
    for (const auto& e : all)
      CHECK(z.contains(e) == (brute.count({e.a, e.c}) > 0));
  }
}

TEST_CASE("derived and power subgroups: pinned examples") {
  auto g = cant(3, 2);
  CHECK(derived_subgroup(g).order_exp == 1);  // |G'| = 3
  CHECK(power_subgroup(g, 3).order_exp == 3);  // G^3 G' has order 27
  // G^{p^n} G' = G' in an exponent-p^n variety
  CHECK(sub_equal(power_subgroup(g, 9), derived_subgroup(g)));
  CHECK_THROWS(power_subgroup(g, 6));
}

TEST_CASE("power subgroup agrees with enumeration") {
  auto g = cant(3, 2);
  auto p3 = power_subgroup(g, 3);
  auto all = enumerate_group(*g, 100000);
  std::vector<Elt> gens;
  for (const auto& e : all) gens.push_back(g->pow(e, 3));
  for (std::size_t t = 0; t < g->f.pairs(); ++t) {
    Vec c(g->f.pairs(), 0);
    c[t] = 1;
    gens.push_back(g->reduce(FreeElement{Vec(g->rank(), 0), c}));
  }
  CHECK(closure_count(*g, gens, 100000) == 27);
  for (const auto& e : gens) CHECK(p3.contains(e));
}

TEST_CASE("abelianization: pinned examples") {
  auto h = heisenberg(3);
  auto ab = abelianization(h);
  CHECK(ab.decomp.exps == std::vector<u32>{1, 1});  // Z/3 + Z/3
  CHECK(ab.A->order_u64() == 9);

  auto g = cant(3, 2);
  auto ab2 = abelianization(g);
  CHECK(ab2.decomp.exps == std::vector<u32>{2, 2});  // Z/9 + Z/9

  auto c9 = FpGroup::build(pres(3, 2, {"x"}, {pw(gen(0), 9)}));
  CHECK(abelianization(c9).decomp.exps == std::vector<u32>{2});
  CHECK(abelianization(c9).decomp.cyclic_or_trivial());
}

TEST_CASE("quotient: pinned examples") {
  auto f = relfree(2, 3, 2);
  auto q = quotient(f, {br(gen(0), gen(1))});
  CHECK(q.Q->order_u64() == 81);  // abelian (Z/9)^2
  CHECK(center(q.Q).order_exp == q.Q->order_exp);
  // re-adding the same relators changes nothing
  auto q2 = quotient(q.Q, {br(gen(0), gen(1))});
  CHECK(q2.Q->order_exp == q.Q->order_exp);
  // quotient by a generator kills it
  auto q3 = quotient(f, {gen(0)});
  CHECK(q3.Q->order_u64() == 9);
}

TEST_CASE("kernel_subgroup: structured kernel matches the quotient") {
  auto f = relfree(2, 3, 2);
  auto q = quotient(f, {br(gen(0), gen(1))});
  auto ker = kernel_subgroup(q.proj);
  CHECK(sub_equal(ker, derived_subgroup(f)));

  // kernel of an injective map is trivial
  auto g = cant(3, 2);
  auto a = relfree(2, 3, 3);
  // same-variety requirement: embed first
  auto emb = embed_in_variety(g, 3);
  auto comp = hom(emb.K, a, {a->pow(a->gen(0), 3), a->pow(a->gen(1), 3)});
  CHECK(kernel_subgroup(comp).order_exp == 0);
}

TEST_CASE("enumerate_group and enumerate_subgroup") {
  auto g = cant(3, 2);
  auto all = enumerate_group(*g, 1000);
  CHECK(all.size() == 243);
  std::set<std::pair<Vec, Vec>> dedup;
  for (const auto& e : all) {
    CHECK(g->reduce(e) == e);
    dedup.insert({e.a, e.c});
  }
  CHECK(dedup.size() == 243);

  auto a = relfree(2, 3, 3);
  auto h = subgroup(a, {a->pow(a->gen(0), 3), a->pow(a->gen(1), 3)});
  auto hs = enumerate_subgroup(h, 100000);
  CHECK(hs.size() == 243);
  std::set<std::pair<Vec, Vec>> brute;
  for (const auto& e : closure_enumerate(*a, h.gens, 100000))
    brute.insert({e.a, e.c});
  std::set<std::pair<Vec, Vec>> got;
  for (const auto& e : hs) got.insert({e.a, e.c});
  CHECK(got == brute);

  CHECK_THROWS_AS(enumerate_group(*relfree(3, 3, 3), 1000), cap_exceeded);
}

TEST_CASE("subgroup membership agrees with enumeration") {
  auto g = relfree(2, 3, 2);
  std::mt19937 rng(47);
  for (int it = 0; it < 5; ++it) {
    std::vector<Elt> gens;
    for (int j = 0; j < 2; ++j) {
      FreeElement raw = g->f.identity();
      for (auto& x : raw.a) x = rng() % 9;
      for (auto& x : raw.c) x = rng() % 9;
      gens.push_back(g->reduce(raw));
    }
    auto h = subgroup(g, gens);
    std::set<std::pair<Vec, Vec>> inh;
    for (const auto& e : closure_enumerate(*g, gens, 100000))
      inh.insert({e.a, e.c});
    CHECK(inh.size() == [&] {
      u64 r = 1;
      for (u32 i = 0; i < h.order_exp; ++i) r *= 3;
      return r;
    }());
    for (const auto& e : enumerate_group(*g, 10000))
      CHECK(h.contains(e) == (inh.count({e.a, e.c}) > 0));
  }
}

TEST_CASE("omega subgroup: pinned examples") {
  auto c9 = FpGroup::build(pres(3, 2, {"x"}, {pw(gen(0), 9)}));
  auto z = center(c9);
  CHECK(omega_subgroup(z, 1, 1000).order_exp == 1);  // order 3
  CHECK(sub_equal(omega_subgroup(z, 2, 1000), z));   // full center
}

TEST_CASE("subgroup_to_fpgroup: presentation of <a^3,b^3> in F(2,3,3)") {
  auto a = relfree(2, 3, 3);
  auto h = subgroup(a, {a->pow(a->gen(0), 3), a->pow(a->gen(1), 3)});
  auto sp = subgroup_to_fpgroup(h);
  CHECK(sp.H->order_exp == 5);
  CHECK(is_injective(sp.iso));
  // the subgroup is isomorphic to cant(3,2) re-presented in exponent 27:
  // same order and an exponent-9 generator pair with [s,t]^3 = e
  CHECK(sp.H->is_identity(sp.H->pow(sp.H->gen(0), 9)));
  CHECK(sp.H->is_identity(
      sp.H->pow(sp.H->comm(sp.H->gen(0), sp.H->gen(1)), 3)));
}

TEST_CASE("subgroup_to_fpgroup on random subgroups preserves order") {
  auto g = relfree(2, 3, 2);
  std::mt19937 rng(53);
  for (int it = 0; it < 8; ++it) {
    std::vector<Elt> gens;
    for (int j = 0; j < 1 + it % 3; ++j) {
      FreeElement raw = g->f.identity();
      for (auto& x : raw.a) x = rng() % 9;
      for (auto& x : raw.c) x = rng() % 9;
      gens.push_back(g->reduce(raw));
    }
    auto h = subgroup(g, gens);
    auto sp = subgroup_to_fpgroup(h);
    CHECK(sp.H->order_exp == h.order_exp);
    CHECK(is_injective(sp.iso));
  }
}

TEST_CASE("embed_in_variety preserves the group") {
  auto g = cant(3, 2);
  auto e = embed_in_variety(g, 3);
  CHECK(e.K->order_exp == g->order_exp);
  CHECK(e.K->variety().q_gen == 27);
  CHECK(is_injective(e.emb));
  // the image inside the bigger variety still has exponent 9
  for (const auto& x : enumerate_group(*e.K, 1000))
    CHECK(e.K->is_identity(e.K->pow(x, 9)));
}

TEST_CASE("structured orders equal closure counts across a small catalog") {
  std::vector<GroupPtr> catalog{
      heisenberg(3), cant(3, 1), cant(3, 2), relfree(1, 3, 2), relfree(2, 3, 2),
      FpGroup::build(pres(3, 1, {"x", "y", "z"},
                          {pw(gen(0), 3), pw(gen(1), 3), pw(gen(2), 3),
                           pw(br(gen(0), gen(1)), 3), br(gen(0), gen(2)),
                           br(gen(1), gen(2))}))};
  for (const auto& g : catalog) {
    std::vector<Elt> gens;
    for (std::size_t i = 0; i < g->rank(); ++i) gens.push_back(g->gen(i));
    CHECK(closure_count(*g, gens, 1000000) == g->order_u64());
  }
}

TEST_CASE("p = 2: the exponent-4 example group has order 64") {
  Presentation p;
  p.v = Variety::make(2, 2);
  p.names = {"a", "b", "c"};
  p.relators = {pw(gen(0), 4),
                pw(gen(1), 4),
                pw(gen(2), 4),
                pw(br(gen(0), gen(1)), 2),
                br(gen(0), gen(2)),
                br(gen(1), gen(2)),
                Word::concat({pw(gen(2), 2), pw(br(gen(0), gen(1)), -1)})};
  auto e4 = FpGroup::build(p);
  CHECK(e4->order_u64() == 64);
  CHECK(closure_count(*e4, {e4->gen(0), e4->gen(1), e4->gen(2)}, 1000) == 64);
  CHECK(center(e4).order_exp == 4);       // order 16
  CHECK(derived_subgroup(e4).order_exp == 1);  // order 2
  // c^2 = [a,b]
  CHECK(e4->pow(e4->gen(2), 2) == e4->comm(e4->gen(0), e4->gen(1)));
}
