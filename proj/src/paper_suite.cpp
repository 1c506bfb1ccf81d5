#include "nil2/paper_suite.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "nil2/catalog.hpp"
#include "nil2/construct.hpp"
#include "nil2/enumerate.hpp"

namespace nil2 {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  bool ok = true;
  std::ostringstream detail;
  int checks = 0;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) {
      ok = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

GroupPtr from_catalog(const std::string& ref) {
  return FpGroup::build(catalog_lookup(ref).pres);
}

u32 p_power(u32 p, u32 e) {
  u32 r = 1;
  for (u32 i = 0; i < e; ++i) r *= p;
  return r;
}

// --------------------------------------------------------------------------
// independent word-rewriting oracle for F(2,3,1): letter strings over {x,y},
// collected by bubbling x's leftwards, one [y,x] token per swap

struct Collected {
  int nx, ny, c;
};

Collected collect_letters(const std::string& w, int carried) {
  std::string s = w;
  int comm = carried;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] == 'y' && s[i + 1] == 'x') {
        std::swap(s[i], s[i + 1]);
        ++comm;
        moved = true;
      }
  }
  int nx = 0, ny = 0;
  for (char c : s) (c == 'x' ? nx : ny)++;
  return {nx % 3, ny % 3, ((comm % 3) + 3) % 3};
}

// --------------------------------------------------------------------------

CriterionResult criterion1(u64, u32 seed) {
  Checker ck;
  FreeCtx f(Variety::make(3, 2), 3);
  std::mt19937 rng(seed + 1);
  auto rand_elt = [&] {
    FreeElement e = f.identity();
    for (auto& x : e.a) x = rng() % 9;
    for (auto& x : e.c) x = rng() % 9;
    return e;
  };
  std::uniform_int_distribution<int> dn(-20, 20);
  for (int it = 0; it < 1000 && ck.ok; ++it) {
    auto x = rand_elt(), y = rand_elt(), z = rand_elt();
    int n = dn(rng);
    ck.expect(f.comm(f.mul(x, y), z) == f.mul(f.comm(x, z), f.comm(y, z)),
              "identity (a) left");
    ck.expect(f.comm(x, f.mul(y, z)) == f.mul(f.comm(x, y), f.comm(x, z)),
              "identity (a) right");
    ck.expect(f.comm(f.pow(x, n), y) == f.pow(f.comm(x, y), n), "identity (b)");
    ck.expect(f.pow(f.mul(x, y), n) ==
                  f.mul(f.mul(f.pow(x, n), f.pow(y, n)),
                        f.pow(f.comm(y, x), static_cast<int64_t>(n) * (n - 1) / 2)),
              "identity (c)");
    ck.expect(f.comm(f.mul(x, f.comm(y, z)), y) == f.comm(x, y), "identity (d)");
  }

  // the variety exponent holds on the nose: u^9 = e in F(2,3,2)
  {
    FreeCtx f9(Variety::make(3, 2), 2);
    std::mt19937 rng9(seed + 2);
    for (int it = 0; it < 50; ++it) {
      FreeElement e = f9.identity();
      for (auto& x : e.a) x = rng9() % 9;
      for (auto& x : e.c) x = rng9() % 9;
      ck.expect(f9.is_identity(f9.pow(e, 9)), "exponent 9 violated");
    }
  }

  // exhaustive 27 x 27 cross-check against naive letter collection
  FreeCtx f1(Variety::make(3, 1), 2);
  for (int i1 = 0; i1 < 3; ++i1)
    for (int j1 = 0; j1 < 3; ++j1)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int i2 = 0; i2 < 3; ++i2)
          for (int j2 = 0; j2 < 3; ++j2)
            for (int c2 = 0; c2 < 3; ++c2) {
              FreeElement u{{static_cast<u32>(i1), static_cast<u32>(j1)},
                            {static_cast<u32>(c1)}};
              FreeElement v{{static_cast<u32>(i2), static_cast<u32>(j2)},
                            {static_cast<u32>(c2)}};
              auto prod = f1.mul(u, v);
              auto col = collect_letters(std::string(i1, 'x') + std::string(j1, 'y') +
                                             std::string(i2, 'x') + std::string(j2, 'y'),
                                         c1 + c2);
              ck.expect(prod.a[0] == static_cast<u32>(col.nx) &&
                            prod.a[1] == static_cast<u32>(col.ny) &&
                            prod.c[0] == static_cast<u32>(col.c),
                        "rewriting oracle mismatch");
            }
  return {1, "collection identities + rewriting oracle", ck.ok, ck.detail.str(), 0};
}

CriterionResult criterion2(u64, u32) {
  Checker ck;
  std::vector<std::pair<GroupPtr, GroupPtr>> gp;
  auto z3 = from_catalog("abelian(3,1,1)");
  auto z9 = from_catalog("cyclic(3,2)");
  auto f132 = from_catalog("free(1,3,2)");
  auto h = from_catalog("heisenberg(3)");
  auto c32 = from_catalog("cant(3,2)");
  auto f232 = from_catalog("free(2,3,2)");
  auto hig = from_catalog("higgins(3)");
  auto a22 = from_catalog("abelian(3,2,2,2)");
  gp = {{z3, z3},   {f132, f132}, {z9, z9},  {h, z3},   {h, h},
        {c32, z9},  {f232, z9},   {hig, z3}, {a22, z9}, {f232, f232},
        {c32, c32}};
  int done = 0;
  for (auto& [a, b] : gp) {
    auto c = coproduct(a, b);  // asserts the tensor identity internally
    ck.expect(c.M->order_exp == a->order_exp + b->order_exp + c.tensor.order_exp(),
              "tensor order identity");
    ++done;
  }
  ck.expect(done >= 10, "need at least 10 pairs");
  // coproducts of exponent-9 groups have exponent 9 (checked by enumeration
  // on a small pair)
  {
    auto cop = coproduct(h, z9);
    for (const auto& e : enumerate_group(*cop.M, 1u << 20))
      ck.expect(cop.M->is_identity(cop.M->pow(e, 9)), "coproduct exponent");
  }
  // the two pinned orders
  auto c1 = coproduct(z3, z3);
  ck.expect(c1.M->order_u64() == 27, "|Z/3 + Z/3| = 27");
  auto c2 = coproduct(f132, f132);
  ck.expect(c2.M->order_u64() == 729, "|F(1,3,2) + F(1,3,2)| = 729");
  return {2, "MacHenry order identity", ck.ok, ck.detail.str(), 0};
}

CriterionResult criterion3(u64 cap, u32) {
  Checker ck;
  auto k = from_catalog("free(2,3,2)");
  auto k3 = from_catalog("free(2,3,3)");
  auto h = from_catalog("heisenberg(3)");
  auto g = from_catalog("cant(3,2)");
  std::vector<std::pair<GroupPtr, Subgroup>> pairs;
  pairs.push_back({k, subgroup(k, {k->pow(k->gen(0), 3), k->pow(k->gen(1), 3)})});
  pairs.push_back({k, subgroup(k, {k->pow(k->gen(0), 3)})});
  pairs.push_back({k, trivial_subgroup(k)});
  pairs.push_back({k, full_subgroup(k)});
  pairs.push_back({h, subgroup(h, {h->gen(0)})});
  pairs.push_back({h, center(h)});
  pairs.push_back({g, subgroup(g, {g->pow(g->gen(0), 3), g->pow(g->gen(1), 3)})});
  pairs.push_back({g, derived_subgroup(g)});
  pairs.push_back(
      {k3, subgroup(k3, {k3->pow(k3->gen(0), 3), k3->pow(k3->gen(1), 3)})});
  for (auto& [kk, gg] : pairs) {
    auto d = dominion(kk, gg);
    auto o = dominion_oracle(kk, gg, cap);
    ck.expect(sub_equal(d.d, o), "dominion != oracle");
  }
  ck.expect(pairs.size() >= 8, "need at least 8 pairs");
  // the pinned certificate: [a,b]^3 outside <a^3, b^3> in F(2,3,2)
  auto d = dominion(k, pairs[0].second);
  Elt ab3 = k->pow(k->comm(k->gen(0), k->gen(1)), 3);
  ck.expect(d.d.contains(ab3), "[a,b]^3 in the dominion");
  ck.expect(!pairs[0].second.contains(ab3), "[a,b]^3 outside the subgroup");
  ck.expect(!d.certificates.empty(), "certificate emitted");
  // the image of cant(3,2) under x -> a^3, y -> b^3 has order 3^5
  ck.expect(pairs[8].second.order_exp == 5, "<a^3,b^3> in F(2,3,3) has order 3^5");
  // special amalgams are always weakly embeddable
  for (std::size_t t = 0; t < 3; ++t) {
    auto sp = subgroup_to_fpgroup(pairs[t].second);
    auto am = special_amalgam(sp.iso);
    ck.expect(is_weakly_embeddable(am, cap).ok,
              "special amalgam failed to embed weakly");
  }
  return {3, "dominion oracle equivalence", ck.ok, ck.detail.str(), 0};
}

CriterionResult criterion4(u64 cap, u32) {
  Checker ck;
  auto t0 = Clock::now();
  {
    auto g = from_catalog("cant(3,2)");
    ck.expect(g->order_u64() == 243, "|cant(3,2)| = 3^5");
    ck.expect(closure_count(*g, {g->gen(0), g->gen(1)}, cap) == 243,
              "closure enumeration of cant(3,2)");
    ck.expect(g->is_identity(g->pow(g->comm(g->gen(0), g->gen(1)), 3)),
              "[x,y]^3 = e in cant(3,2)");
    ck.expect(!g->is_identity(g->comm(g->gen(0), g->gen(1))),
              "[x,y] != e in cant(3,2)");
  }
  for (u32 n : {1u, 2u}) {
    auto g = from_catalog("cant(3," + std::to_string(n) + ")");
    ck.expect(is_absolutely_closed(g, VarietyKind::Bpn, false, cap).closed,
              "cant closed in its own variety");
    auto up = embed_in_variety(g, n + 1);
    ck.expect(!is_absolutely_closed(up.K, VarietyKind::Bpn, false, cap).closed,
              "cant not closed one exponent higher");
    // the concrete witness: embed into F(2,3,n+1); the dominion of the image
    // picks up [a,b]^3
    auto f = from_catalog("free(2,3," + std::to_string(n + 1) + ")");
    auto m = hom(g, f, {f->pow(f->gen(0), 3), f->pow(f->gen(1), 3)});
    ck.expect(is_injective(m), "embedding x->a^3, y->b^3 injective");
    auto img = image_subgroup(m);
    auto d = dominion(f, img);
    Elt ab3 = f->pow(f->comm(f->gen(0), f->gen(1)), 3);
    ck.expect(d.d.contains(ab3) && !img.contains(ab3),
              "dominion witness [a,b]^3");
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  ck.expect(secs <= 30.0, "runtime over 30 s");
  return {4, "cant(p,n) reproduction with witnesses", ck.ok, ck.detail.str(), 0};
}

CriterionResult criterion5(u64 cap, u32) {
  Checker ck;
  // abelian catalog groups: closed iff G/3G cyclic or trivial
  for (const char* ref : {"cyclic(3,2)", "abelian(3,2,1,1)", "abelian(3,2,2,2)",
                          "abelian(3,2,2,1)", "abelian(3,2,2)"}) {
    auto g = from_catalog(ref);
    bool closed = is_absolutely_closed(g, VarietyKind::Bpn, false, cap).closed;
    bool cyc = lattice_quotient_cyclic_or_trivial(
        3, zmod::full_lattice(3, g->f.v.q_gen, g->rank()), g->nspan.abelian);
    ck.expect(closed == cyc, std::string("abelian predicate mismatch at ") + ref);
  }
  // exponent-3 groups inside exponent 9: closed iff Z(G)/G' cyclic or trivial
  for (const char* ref : {"heisenberg(3)", "higgins(3)", "abelian(3,1,1,1,1)",
                          "cant(3,1)"}) {
    auto g0 = from_catalog(ref);
    auto g = embed_in_variety(g0, 2).K;
    bool closed = is_absolutely_closed(g, VarietyKind::Bpn, false, cap).closed;
    bool cyc = lattice_quotient_cyclic_or_trivial(3, center(g).span.abelian,
                                                  derived_subgroup(g).span.abelian);
    ck.expect(closed == cyc, std::string("exponent-p predicate mismatch at ") + ref);
  }
  // every exponent-3 group is closed in its own variety
  for (const char* ref : {"heisenberg(3)", "higgins(3)", "abelian(3,1,1,1,1)",
                          "cant(3,1)"}) {
    auto g = from_catalog(ref);
    ck.expect(is_absolutely_closed(g, VarietyKind::Bpn, false, cap).closed,
              std::string("exponent-3 closed in B_3 at ") + ref);
  }
  return {5, "easy-case classifications", ck.ok, ck.detail.str(), 0};
}

CriterionResult criterion6(u64 cap, u32) {
  Checker ck;
  auto h = from_catalog("higgins(3)");
  ck.expect(is_absolutely_closed(h, VarietyKind::N2, false, cap).closed,
            "higgins(3) absolutely closed");
  auto ab = from_catalog("abelian(3,1,1,1,1)");
  ck.expect(abelianization(h).decomp == abelianization(ab).decomp,
            "abelianization is (Z/3)^3");
  ck.expect(!is_absolutely_closed(ab, VarietyKind::N2, false, cap).closed,
            "(Z/3)^3 not absolutely closed");
  return {6, "higgins counterexample (images of closed groups)", ck.ok,
          ck.detail.str(), 0};
}

CriterionResult criterion7(u64 cap, u32) {
  Checker ck;
  int count = 0;
  auto run_chain = [&](GroupPtr k, const Subgroup& g) {
    auto chain = dominion_closure_chain(k, g, VarietyKind::Bpn, cap);
    ck.expect(chain.dom.d.order_exp > g.order_exp, "dominion strictly larger");
    ck.expect(!chain.d_report.closed, "dominion again not closed");
    ++count;
  };
  auto k = from_catalog("free(2,3,2)");
  run_chain(k, subgroup(k, {k->pow(k->gen(0), 3), k->pow(k->gen(1), 3)}));
  auto k3 = from_catalog("free(2,3,3)");
  run_chain(k3, subgroup(k3, {k3->pow(k3->gen(0), 3), k3->pow(k3->gen(1), 3)}));
  // witnesses produced by the construction give further non-closed pairs
  for (const char* ref : {"abelian(3,2,1,1)", "abelian(3,2,2,2)", "abelian(3,2,2,1)"}) {
    auto g = from_catalog(ref);
    auto w = witness_not_closed_any(g, VarietyKind::Bpn, cap);
    ck.expect(w.has_value(), std::string("witness exists for ") + ref);
    if (w) run_chain(w->K, image_subgroup(w->emb));
  }
  ck.expect(count >= 5, "need at least 5 chain pairs");
  return {7, "no absolute closures", ck.ok, ck.detail.str(), 0};
}

// deterministic overgroup sampler for criterion 8
struct AmalgamSampler {
  std::mt19937 rng;
  explicit AmalgamSampler(u32 seed) : rng(seed) {}

  Morphism overgroup(GroupPtr g) {
    const Variety& v = g->f.v;
    switch (rng() % 4) {
      case 0: {  // G ∐ Z/p^j
        u32 j = 1 + rng() % v.n;
        Presentation pres{v, {"w"}, {Word::power(Word::make_gen(0), p_power(v.p, j))}};
        auto cop = coproduct(g, FpGroup::build(std::move(pres)));
        return cop.into_left;
      }
      case 1: {  // G x Z/p^j
        Presentation pres = g->pres;
        std::size_t t = pres.names.size();
        pres.names.push_back("w");
        pres.relators.push_back(
            Word::power(Word::make_gen(t), p_power(v.p, 1 + rng() % v.n)));
        for (std::size_t s = 0; s < t; ++s)
          pres.relators.push_back(Word::bracket(Word::make_gen(t), Word::make_gen(s)));
        GroupPtr k = FpGroup::build(std::move(pres));
        std::vector<Elt> img;
        for (std::size_t s = 0; s < g->rank(); ++s) img.push_back(k->gen(s));
        return hom(g, k, img);
      }
      case 2: {  // make a central element a commutator
        auto z = center(g);
        auto elems = enumerate_subgroup(z, 4096);
        Elt c = elems[rng() % elems.size()];
        return central_to_commutator(g, {c}).emb;
      }
      default: {  // adjoin a central p-th root
        auto z = center(g);
        auto elems = enumerate_subgroup(z, 4096);
        Elt c = elems[rng() % elems.size()];
        // stay inside the variety: the root must fit
        if (g->elt_order_exp(c) >= g->f.v.n) c = g->identity();
        return adjoin_central_roots(g, {{c, g->f.v.p}}).emb;
      }
    }
  }
};

CriterionResult criterion8(u64 cap, u32 seed) {
  Checker ck;
  for (const auto& ref : paper_catalog_refs()) {
    auto g = from_catalog(ref);
    auto rep = is_amalgamation_base(g, cap);
    auto ce = witness_not_base(g, cap);
    ck.expect(rep.is_base == !ce.has_value(),
              "verdict and constructive outcome disagree at " + ref);
    if (ce) {
      ck.expect(!ce->failure.ok, "counterexample not machine-checked at " + ref);
      continue;
    }
    AmalgamSampler sampler(seed + static_cast<u32>(std::hash<std::string>{}(ref)));
    for (int t = 0; t < 20; ++t) {
      Morphism m1 = sampler.overgroup(g);
      Morphism m2 = sampler.overgroup(g);
      Amalgam am = make_amalgam(m1, m2);
      auto strong = is_strongly_embeddable(am, cap);
      ck.expect(strong.ok, "amalgam over a base failed to embed at " + ref);
      ck.expect(maier_strong_check(am, cap) == strong.ok,
                "maier disagrees with the coproduct decision at " + ref);
    }
  }
  return {8, "weak/strong bases with constructive outcomes", ck.ok,
          ck.detail.str(), 0};
}

CriterionResult criterion9(u64 cap, u32) {
  Checker ck;
  struct Case {
    const char* ref;
    u32 embed_to;  // 0 = classify in its own variety
  };
  for (const Case& c : {Case{"abelian(3,2,1,1)", 0}, Case{"abelian(3,2,2,2)", 0},
                        Case{"cant(3,2)", 3}}) {
    GroupPtr g = from_catalog(c.ref);
    if (c.embed_to) g = embed_in_variety(g, c.embed_to).K;
    auto w = witness_not_closed_any(g, VarietyKind::Bpn, cap);
    ck.expect(w.has_value(), std::string("witness expected for ") + c.ref);
    if (!w) continue;
    const Variety& v = g->f.v;
    ck.expect(w->K->variety().q_gen == v.q_gen, "witness lives in exponent p^n");
    ck.expect(is_injective(w->emb), "witness embedding injective");
    auto img = image_subgroup(w->emb);
    ck.expect(!img.contains(w->d), "d outside the image");
    ck.expect(dominion(w->K, img).d.contains(w->d), "d in the dominion");
    // exponent p^n, by generator orders plus batch sampling
    bool exp_ok = true;
    for (std::size_t t = 0; t < w->K->rank(); ++t)
      exp_ok &= w->K->elt_order_exp(w->K->gen(t)) <= v.n;
    if (w->K->order_exp <= 14) {
      auto elems = enumerate_group(*w->K, cap);
      EltBlock block = EltBlock::from(w->K->f, elems);
      EltBlock powered = batch_pow_free(w->K->f, block, v.q_gen);
      for (std::size_t e = 0; e < powered.n; ++e)
        exp_ok &= w->K->is_identity(w->K->reduce(powered.get(w->K->f, e)));
    }
    ck.expect(exp_ok, "witness group exponent");
    // keylemma on the trace: all shift-0 witnesses evaluate to the identity
    GroupPtr k0 = w->trace.k0;
    std::vector<Elt> gimg;
    for (std::size_t t = 0; t < g->rank(); ++t) gimg.push_back(k0->gen(t));
    Morphism iota = hom(g, k0, gimg);
    Elt x0 = iota.apply(g->reduce(FreeElement{w->xbar, Vec(g->f.pairs(), 0)}));
    Elt y0 = iota.apply(g->reduce(FreeElement{w->ybar, Vec(g->f.pairs(), 0)}));
    for (const auto& cw :
         sample_congruence_witnesses(g, w->xbar, w->ybar, w->i, 0)) {
      ck.expect(keylemma_check(k0, x0, y0, w->trace.r, w->trace.s, w->i, 0, cw.a,
                               cw.b, cw.c, iota.apply(*cw.g1), iota.apply(*cw.g2)),
                "keylemma instance failed on the trace");
    }
  }
  // central elements always admit roots (used throughout the constructions)
  {
    auto f = from_catalog("free(2,3,2)");
    Elt central = f->comm(f->gen(0), f->gen(1));
    ck.expect(has_root_extension(f, RootQuery{{central}, {9}}),
              "central root adjunction");
  }
  return {9, "witness soundness", ck.ok, ck.detail.str(), 0};
}

CriterionResult criterion10(u64 cap, u32) {
  Checker ck;
  auto e4 = from_catalog("e4");
  ck.expect(e4->order_u64() == 64, "|e4| = 64");
  auto rep = even_amalgam_condition(e4, cap);
  ck.expect(rep.ok, "e4 satisfies the even amalgam condition");
  ck.expect(rep.omega_order_exp == 3 && rep.power_order_exp == 3,
            "both sides of order 8");
  ck.expect(!sub_equal(center(e4), derived_subgroup(e4)),
            "Z(G) != G' for e4");
  ck.expect(!even_weak_base_condition(e4, cap), "e4 fails the weak-base condition");
  return {10, "even-exponent example", ck.ok, ck.detail.str(), 0};
}

CriterionResult criterion11(u64 cap, u32 seed) {
  Checker ck;
  auto t0 = Clock::now();
  // gate 1: solve/kernel brute-force comparisons over Z/9 and Z/27
  {
    std::mt19937 rng(seed + 11);
    for (u32 q : {9u, 27u}) {
      for (int iter = 0; iter < 10; ++iter) {
        std::size_t r = 1 + iter % 2, c = 1 + iter % 2;
        zmod::Mat m(q, r, c);
        for (auto& x : m.data) x = rng() % q;
        Vec t(c);
        for (auto& x : t) x = rng() % q;
        auto sol = zmod::solve(3, m, zmod::zero_lattice(3, q, c), t);
        // brute scan
        std::set<Vec> brute;
        Vec x(r, 0);
        while (true) {
          Vec y(c, 0);
          for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < c; ++b)
              y[b] = static_cast<u32>((y[b] + static_cast<u64>(x[a]) * m.at(a, b)) % q);
          if (y == t) brute.insert(x);
          std::size_t i = 0;
          for (; i < r; ++i) {
            if (++x[i] < q) break;
            x[i] = 0;
          }
          if (i == r) break;
        }
        if (!sol) {
          ck.expect(brute.empty(), "solve missed solutions");
        } else {
          std::set<Vec> got;
          sol->homogeneous.for_each([&](const Vec& kv) {
            Vec xx(r);
            for (std::size_t a = 0; a < r; ++a)
              xx[a] = (sol->particular[a] + kv[a]) % q;
            got.insert(xx);
            return true;
          });
          ck.expect(got == brute, "solve set mismatch");
        }
      }
    }
  }
  // gate 2: S_n = S_{n+1} stabilization on the catalog
  {
    for (const char* ref : {"cant(3,2)", "free(2,3,2)", "abelian(3,2,2,1)"}) {
      auto g = from_catalog(ref);
      u32 qn = g->f.v.q_gen;
      ck.expect(power_subgroup(g, qn).span.abelian ==
                    power_subgroup(g, qn * 3).span.abelian,
                std::string("stabilization fails at ") + ref);
      ck.expect(power_subgroup(g, qn).span.abelian == g->nspan.abelian,
                "power image should collapse to the relator lattice");
    }
  }
  // gate 3: the p = 3, n = 1 Cayley cross-check (27 x 27 products again,
  // through the group layer this time)
  {
    auto h = from_catalog("free(2,3,1)");
    auto elems = enumerate_group(*h, cap);
    ck.expect(elems.size() == 27, "|F(2,3,1)| = 27");
    for (const auto& u : elems)
      for (const auto& v : elems) {
        auto prod = h->mul(u, v);
        auto col = collect_letters(
            std::string(u.a[0], 'x') + std::string(u.a[1], 'y') +
                std::string(v.a[0], 'x') + std::string(v.a[1], 'y'),
            static_cast<int>(u.c[0] + v.c[0]));
        ck.expect(prod.a[0] == static_cast<u32>(col.nx) &&
                      prod.a[1] == static_cast<u32>(col.ny) &&
                      prod.c[0] == static_cast<u32>(col.c),
                  "Cayley cross-check mismatch");
      }
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  ck.expect(secs < 5.0, "gates exceeded 5 s");
  return {11, "derived-fact gates", ck.ok, ck.detail.str(), 0};
}

}  // namespace

SuiteResult run_paper_suite(u64 cap, u32 seed, std::ostream* progress) {
  SuiteResult res;
  using Fn = CriterionResult (*)(u64, u32);
  // the gates run first: the main suite is only trusted once they pass
  Fn fns[] = {criterion11, criterion1, criterion2, criterion3, criterion4,
              criterion5,  criterion6, criterion7, criterion8, criterion9,
              criterion10};
  for (Fn fn : fns) {
    auto t0 = Clock::now();
    CriterionResult r = fn(cap, seed);
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (progress)
      (*progress) << (r.passed ? "PASS" : "FAIL") << " criterion " << r.index
                  << " (" << r.name << ") [" << r.seconds << " s]"
                  << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
    res.criteria.push_back(std::move(r));
  }
  std::sort(res.criteria.begin(), res.criteria.end(),
            [](const CriterionResult& a, const CriterionResult& b) {
              return a.index < b.index;
            });
  return res;
}

}  // namespace nil2
