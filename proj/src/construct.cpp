#include "nil2/construct.hpp"

#include <algorithm>

namespace nil2 {

namespace {

u32 p_power(u32 p, u32 e) {
  u32 r = 1;
  for (u32 i = 0; i < e; ++i) r *= p;
  return r;
}

Word gen_word(std::size_t i) { return Word::make_gen(i); }

void require_central(const Subgroup& z, const Elt& g, const char* who) {
  if (!z.contains(g))
    throw std::invalid_argument(std::string(who) + ": non-central input");
}

}  // namespace

GroupPtr restrict_variety(GroupPtr G, u32 n) {
  const Variety& v = G->f.v;
  if (n > v.n) throw std::invalid_argument("restrict_variety: target is larger");
  Presentation pres;
  pres.v = Variety::make(v.p, n);
  pres.names = G->pres.names;
  pres.relators = G->pres.relators;  // words re-evaluate modulo the smaller exponent
  GroupPtr out = FpGroup::build(std::move(pres));
  if (out->order_exp != G->order_exp)
    throw check_failed("restrict_variety: order changed; the group does not "
                       "have the claimed exponent");
  return out;
}

CentralRootsResult adjoin_central_roots(
    GroupPtr G, const std::vector<std::pair<Elt, u32>>& wanted) {
  const Variety& v = G->f.v;
  std::size_t k = G->rank();
  Subgroup z = center(G);
  for (const auto& [g, ni] : wanted) require_central(z, g, "adjoin_central_roots");

  Presentation pres;
  pres.v = v;
  pres.names = G->pres.names;
  pres.relators = G->pres.relators;
  u32 total_root_exp = 0;
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    std::string nm = "h" + std::to_string(i);
    while (std::find(pres.names.begin(), pres.names.end(), nm) != pres.names.end())
      nm += "'";
    pres.names.push_back(nm);
  }
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    const auto& [g, ni] = wanted[i];
    std::size_t hi = k + i;
    u64 ai = p_power(v.p, G->elt_order_exp(g));
    u64 order = static_cast<u64>(ni) * ai;
    {
      u32 t = ni;
      while (t > 1 && t % v.p == 0) t /= v.p;
      if (t != 1)
        throw std::invalid_argument("adjoin_central_roots: degrees must be powers of p");
    }
    total_root_exp += zmod::valuation(v.p, v.q_gen, ni % v.q_gen == 0 ? 0 : ni % v.q_gen);
    pres.relators.push_back(Word::power(gen_word(hi), static_cast<int64_t>(order)));
    for (std::size_t s = 0; s < k; ++s)
      pres.relators.push_back(Word::bracket(gen_word(hi), gen_word(s)));
    for (std::size_t j = 0; j < i; ++j)
      pres.relators.push_back(Word::bracket(gen_word(hi), gen_word(k + j)));
    pres.relators.push_back(Word::concat(
        {element_to_word(G->f, g),
         Word::power(gen_word(hi), -static_cast<int64_t>(ni))}));
  }

  CentralRootsResult res;
  res.K = FpGroup::build(std::move(pres));
  if (res.K->order_exp != G->order_exp + total_root_exp)
    throw check_failed("adjoin_central_roots: order mismatch (roots do not fit "
                       "in the variety)");
  std::vector<Elt> images;
  for (std::size_t i = 0; i < k; ++i) images.push_back(res.K->gen(i));
  res.emb = hom(G, res.K, images);
  if (!is_injective(res.emb))
    throw check_failed("adjoin_central_roots: embedding not injective");
  Subgroup zk = center(res.K);
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    Elt h = res.K->gen(k + i);
    res.roots.push_back(h);
    if (!(res.K->pow(h, wanted[i].second) == res.emb.apply(wanted[i].first)))
      throw check_failed("adjoin_central_roots: root does not hit the target");
    if (!zk.contains(h))
      throw check_failed("adjoin_central_roots: root is not central");
  }
  return res;
}

CentralCommutatorResult central_to_commutator(GroupPtr G,
                                              const std::vector<Elt>& central) {
  const Variety& v = G->f.v;
  std::size_t k = G->rank();
  Subgroup z = center(G);
  for (const auto& g : central) require_central(z, g, "central_to_commutator");

  Presentation pres;
  pres.v = v;
  pres.names = G->pres.names;
  pres.relators = G->pres.relators;
  for (std::size_t i = 0; i < central.size(); ++i)
    for (int j = 1; j <= 2; ++j) {
      std::string nm = "t" + std::to_string(i) + std::to_string(j);
      while (std::find(pres.names.begin(), pres.names.end(), nm) != pres.names.end())
        nm += "'";
      pres.names.push_back(nm);
    }
  u32 extra_exp = 0;
  for (std::size_t i = 0; i < central.size(); ++i) {
    std::size_t t1 = k + 2 * i, t2 = k + 2 * i + 1;
    u32 ae = G->elt_order_exp(central[i]);
    u64 ai = p_power(v.p, ae);
    extra_exp += 2 * ae;  // |Z/a ∐ Z/a| / a = a^2
    pres.relators.push_back(Word::power(gen_word(t1), static_cast<int64_t>(ai)));
    pres.relators.push_back(Word::power(gen_word(t2), static_cast<int64_t>(ai)));
    for (std::size_t s = 0; s < k; ++s) {
      pres.relators.push_back(Word::bracket(gen_word(t1), gen_word(s)));
      pres.relators.push_back(Word::bracket(gen_word(t2), gen_word(s)));
    }
    for (std::size_t j = 0; j < 2 * i; ++j) {
      pres.relators.push_back(Word::bracket(gen_word(t1), gen_word(k + j)));
      pres.relators.push_back(Word::bracket(gen_word(t2), gen_word(k + j)));
    }
    // g_i [t_{i2}, t_{i1}] = e, i.e. g_i = [t_{i1}, t_{i2}]
    pres.relators.push_back(
        Word::concat({element_to_word(G->f, central[i]),
                      Word::bracket(gen_word(t2), gen_word(t1))}));
  }

  CentralCommutatorResult res;
  res.K = FpGroup::build(std::move(pres));
  if (res.K->order_exp != G->order_exp + extra_exp)
    throw check_failed("central_to_commutator: order mismatch");
  std::vector<Elt> images;
  for (std::size_t i = 0; i < k; ++i) images.push_back(res.K->gen(i));
  res.emb = hom(G, res.K, images);
  if (!is_injective(res.emb))
    throw check_failed("central_to_commutator: embedding not injective");
  for (std::size_t i = 0; i < central.size(); ++i) {
    Elt q1 = res.K->gen(k + 2 * i), q2 = res.K->gen(k + 2 * i + 1);
    if (!(res.K->comm(q1, q2) == res.emb.apply(central[i])))
      throw check_failed("central_to_commutator: bracket misses the target");
    res.witnesses.push_back({q1, q2});
  }
  return res;
}

namespace {

WitnessExtension run_witness_construction(GroupPtr G, const Vec& xbar,
                                          const Vec& ybar, u32 i, u32 ambient,
                                          u64 cap) {
  (void)cap;
  const Variety& v = G->f.v;
  std::size_t k = G->rank();
  u32 qi = p_power(v.p, i);
  u32 qn = v.q_gen;
  u32 qbig = p_power(v.p, ambient);

  Elt x = G->reduce(FreeElement{xbar, Vec(G->f.pairs(), 0)});
  Elt y = G->reduce(FreeElement{ybar, Vec(G->f.pairs(), 0)});

  // Step 1: adjoin p^i-th roots r, s for x, y inside exponent p^ambient
  EmbedResult big = embed_in_variety(G, ambient);
  Presentation pres = big.K->pres;
  std::size_t ri = pres.names.size(), si = ri + 1;
  pres.names.push_back("r");
  pres.names.push_back("s");
  pres.relators.push_back(Word::power(gen_word(ri), qbig));
  pres.relators.push_back(Word::power(gen_word(si), qbig));
  pres.relators.push_back(Word::concat(
      {element_to_word(G->f, x), Word::power(gen_word(ri), -static_cast<int64_t>(qi))}));
  pres.relators.push_back(Word::concat(
      {element_to_word(G->f, y), Word::power(gen_word(si), -static_cast<int64_t>(qi))}));
  GroupPtr k0 = FpGroup::build(std::move(pres));

  std::vector<Elt> gimg;
  for (std::size_t t = 0; t < k; ++t) gimg.push_back(k0->gen(t));
  Morphism iota0 = hom(G, k0, gimg);
  if (!is_injective(iota0)) throw check_failed("witness step 1: G collapsed");
  Elt r = k0->gen(ri), s = k0->gen(si);
  if (!(k0->pow(r, qi) == iota0.apply(x)) || !(k0->pow(s, qi) == iota0.apply(y)))
    throw check_failed("witness step 1: adjoined roots miss their targets");
  Subgroup img0 = image_subgroup(iota0);
  Elt d0 = k0->pow(k0->comm(r, s), qi);
  if (img0.contains(d0))
    throw check_failed("witness step 1: [r,s]^q is already in G");

  // Step 2: kill [r,s]^{p^n}
  auto q2 = quotient(k0, {Word::power(
                             Word::bracket(gen_word(ri), gen_word(si)), qn)});
  GroupPtr k1 = q2.Q;
  if (2 * i <= v.n && k1->order_exp != k0->order_exp)
    throw check_failed("witness step 2: quotient should be trivial for 2i <= n");
  Morphism iota1 = compose(q2.proj, iota0);
  if (!is_injective(iota1)) throw check_failed("witness step 2: G collapsed");
  Elt r1 = q2.proj.apply(r), s1 = q2.proj.apply(s);
  Elt d1 = k1->pow(k1->comm(r1, s1), qi);
  Subgroup img1 = image_subgroup(iota1);
  if (img1.contains(d1))
    throw check_failed("witness step 2: [r,s]^q fell into G");

  // Step 3: x^{p^{n-i}} and y^{p^{n-i}} are central in K1
  u32 qni = p_power(v.p, v.n - i);
  Elt xc = k1->pow(iota1.apply(x), qni);
  Elt yc = k1->pow(iota1.apply(y), qni);
  Subgroup z1 = center(k1);
  if (!z1.contains(xc) || !z1.contains(yc))
    throw check_failed("witness step 3: powers are not central");

  // Step 4: adjoin central p^n-th roots t, v
  auto roots = adjoin_central_roots(k1, {{xc, qn}, {yc, qn}});
  GroupPtr k2 = roots.K;
  Morphism iota2 = compose(roots.emb, iota1);
  Elt t = roots.roots[0], vv = roots.roots[1];
  Elt d2 = roots.emb.apply(d1);
  if (image_subgroup(iota2).contains(d2))
    throw check_failed("witness step 4: [r,s]^q fell into G");

  // Step 5: make t^{p^i} and v^{p^i} commutators
  Elt tq = k2->pow(t, qi), vq = k2->pow(vv, qi);
  if (k2->elt_order_exp(tq) > v.n || k2->elt_order_exp(vq) > v.n)
    throw check_failed("witness step 5: t^q exceeds the target exponent");
  auto comms = central_to_commutator(k2, {tq, vq});
  GroupPtr k3 = comms.K;
  Morphism iota3 = compose(comms.emb, iota2);
  Elt q1 = comms.witnesses[0].first, q2e = comms.witnesses[0].second;
  Elt q3 = comms.witnesses[1].first, q4 = comms.witnesses[1].second;
  Elt r3 = comms.emb.apply(roots.emb.apply(r1));
  Elt s3 = comms.emb.apply(roots.emb.apply(s1));
  Elt t3 = comms.emb.apply(t), v3 = comms.emb.apply(vv);
  Elt d3 = comms.emb.apply(d2);
  if (image_subgroup(iota3).contains(d3))
    throw check_failed("witness step 5: [r,s]^q fell into G");

  // Step 6: the subgroup generated by G, rt^{-1}, sv^{-1}, q1..q4
  Elt rt = k3->mul(r3, k3->inv(t3));
  Elt sv = k3->mul(s3, k3->inv(v3));
  if (!k3->is_identity(k3->pow(rt, qn)) || !k3->is_identity(k3->pow(sv, qn)))
    throw check_failed("witness step 6: rt^{-1} is not of exponent p^n");
  if (!(k3->pow(k3->comm(rt, sv), qi) == d3))
    throw check_failed("witness step 6: central shifts changed the bracket");
  std::vector<Elt> k4gens;
  for (std::size_t tt = 0; tt < k; ++tt) k4gens.push_back(iota3.apply(G->gen(tt)));
  k4gens.push_back(rt);
  k4gens.push_back(sv);
  k4gens.push_back(q1);
  k4gens.push_back(q2e);
  k4gens.push_back(q3);
  k4gens.push_back(q4);
  Subgroup k4sub = subgroup(k3, k4gens);
  if (!k4sub.contains(d3))
    throw check_failed("witness step 6: dominion element left the subgroup");

  std::vector<std::string> names = G->pres.names;
  for (const char* nm : {"rt", "sv", "q1", "q2", "q3", "q4"})
    names.push_back(nm);
  auto sp = subgroup_to_fpgroup(k4sub, names);
  // every generator has exponent p^n, so the subgroup lives in the small variety
  for (std::size_t tt = 0; tt < sp.H->rank(); ++tt)
    if (sp.H->elt_order_exp(sp.H->gen(tt)) > v.n)
      throw check_failed("witness step 6: generator exceeds exponent p^n");
  GroupPtr k4 = restrict_variety(sp.H, v.n);

  WitnessExtension w;
  w.K = k4;
  std::vector<Elt> final_imgs;
  for (std::size_t tt = 0; tt < k; ++tt) final_imgs.push_back(k4->gen(tt));
  w.emb = hom(G, k4, final_imgs);
  if (!is_injective(w.emb)) throw check_failed("witness: final embedding collapsed");
  w.d = k4->pow(k4->comm(k4->gen(k), k4->gen(k + 1)), qi);
  if (image_subgroup(w.emb).contains(w.d))
    throw check_failed("witness: dominion element landed inside G");
  DominionResult dr = dominion(k4, image_subgroup(w.emb));
  if (!dr.d.contains(w.d))
    throw check_failed("witness: element is not in the dominion");
  // sampled element orders on top of the generator argument
  for (const auto& e : k4gens)
    if (k3->elt_order_exp(e) > v.n)
      throw check_failed("witness: generator order exceeds p^n");
  w.xbar = xbar;
  w.ybar = ybar;
  w.i = i;
  w.ambient_exponent_index = ambient;
  w.trace = WitnessTrace{k0, k1,  k2, k3, r,  s,  t,  vv,
                         q1, q2e, q3, q4, rt, sv};
  return w;
}

}  // namespace

std::variant<WitnessExtension, ConditionsHold> witness_not_closed(
    GroupPtr G, const Vec& xbar, const Vec& ybar, u32 i, u64 cap) {
  PairReport pr = classify_class_pair(G, xbar, ybar, i, VarietyKind::Bpn, false);
  if (!pr.none()) return ConditionsHold{pr};
  const Variety& v = G->f.v;
  try {
    return run_witness_construction(G, xbar, ybar, i, v.n + i, cap);
  } catch (const check_failed&) {
    // one retry with a larger finite surrogate before giving up
    return run_witness_construction(G, xbar, ybar, i, v.n + i + 1, cap);
  }
}

std::optional<WitnessExtension> witness_not_closed_any(GroupPtr G,
                                                       VarietyKind kind,
                                                       u64 cap) {
  ClosureReport rep = is_absolutely_closed(G, kind, false, cap);
  if (rep.closed) return std::nullopt;
  const PairReport& fail = rep.pairs[*rep.first_failure];
  auto res = witness_not_closed(G, fail.xbar, fail.ybar, fail.i, cap);
  if (std::holds_alternative<ConditionsHold>(res))
    throw check_failed("witness: classifier and refinement disagree");
  return std::get<WitnessExtension>(std::move(res));
}

std::optional<BaseCounterexample> witness_not_base(GroupPtr G, u64 cap) {
  const Variety& v = G->f.v;
  if (v.p == 2) throw std::invalid_argument("witness_not_base: odd prime required");
  BaseReport rep = is_amalgamation_base(G, cap);
  if (rep.is_base) return std::nullopt;

  std::size_t k = G->rank();
  u32 qn = v.q_gen;

  auto cyclic_group = [&](u32 order) {
    Presentation p;
    p.v = v;
    p.names = {"w"};
    p.relators = {Word::power(Word::make_gen(0), order)};
    return FpGroup::build(std::move(p));
  };

  if (!rep.center_is_derived) {
    // K1 makes the central non-commutator x a commutator; K2 = G ∐ Z/p^n
    // leaves it non-central
    Elt x = *rep.central_non_commutator;
    auto k1 = central_to_commutator(G, {x});
    auto cop = coproduct(G, cyclic_group(qn));
    Elt tgen = cop.M->gen(k);
    if (cop.M->is_identity(cop.M->comm(cop.into_left.apply(x), tgen)))
      throw check_failed("witness_not_base: x stayed central in the coproduct");
    Amalgam am = make_amalgam(k1.emb, cop.into_left);
    EmbedCheck chk = is_weakly_embeddable(am, cap);
    if (chk.ok)
      throw check_failed("witness_not_base: amalgam unexpectedly embeds");
    return BaseCounterexample{std::move(am), std::move(chk),
                              "a central non-commutator becomes a commutator "
                              "on one side and non-central on the other"};
  }

  // Z(G) = G' but some g fails the root condition at index i
  const BaseElementReport& item = rep.items[*rep.first_failure];
  u32 i = item.i;
  u32 qi = p_power(v.p, i);
  Elt g = G->reduce(FreeElement{item.gbar, Vec(G->f.pairs(), 0)});
  if (!has_root_extension(G, RootQuery{{g}, {qi}}))
    throw check_failed("witness_not_base: the failing element has no root "
                       "extension after all");

  // K1 = G ∐ Z/p^i: g fails to commute with an element of exponent p^i
  auto cop1 = coproduct(G, cyclic_group(qi));
  if (cop1.M->is_identity(
          cop1.M->comm(cop1.into_left.apply(g), cop1.M->gen(k))))
    throw check_failed("witness_not_base: g commutes in the test coproduct");

  // K2: an exponent-p^n group where g is a p^i-th power modulo commutators
  u32 ambient = v.n + i;
  EmbedResult big = embed_in_variety(G, ambient);
  Presentation pres = big.K->pres;
  std::size_t ri = pres.names.size();
  pres.names.push_back("r");
  pres.relators.push_back(Word::power(gen_word(ri), p_power(v.p, ambient)));
  pres.relators.push_back(Word::concat(
      {element_to_word(G->f, g), Word::power(gen_word(ri), -static_cast<int64_t>(qi))}));
  GroupPtr kr = FpGroup::build(std::move(pres));
  std::vector<Elt> gimg;
  for (std::size_t tt = 0; tt < k; ++tt) gimg.push_back(kr->gen(tt));
  Morphism iota = hom(G, kr, gimg);
  if (!is_injective(iota))
    throw check_failed("witness_not_base: root adjunction collapsed G");
  Elt rr = kr->gen(ri);

  u32 qni = p_power(v.p, v.n - i);
  Elt gc = kr->pow(iota.apply(g), qni);
  if (!center(kr).contains(gc))
    throw check_failed("witness_not_base: g^{p^{n-i}} is not central");
  auto roots = adjoin_central_roots(kr, {{gc, qn}});
  Elt t = roots.roots[0];
  Elt tq = roots.K->pow(t, qi);
  auto comms = central_to_commutator(roots.K, {tq});
  GroupPtr k3 = comms.K;
  Morphism into3 = compose(comms.emb, compose(roots.emb, iota));
  Elt rt = k3->mul(comms.emb.apply(roots.emb.apply(rr)),
                   k3->inv(comms.emb.apply(roots.roots[0])));
  if (!k3->is_identity(k3->pow(rt, qn)))
    throw check_failed("witness_not_base: rt^{-1} is not of exponent p^n");
  std::vector<Elt> k2gens;
  for (std::size_t tt = 0; tt < k; ++tt) k2gens.push_back(into3.apply(G->gen(tt)));
  k2gens.push_back(comms.witnesses[0].first);
  k2gens.push_back(comms.witnesses[0].second);
  k2gens.push_back(rt);
  Subgroup k2sub = subgroup(k3, k2gens);
  std::vector<std::string> names = G->pres.names;
  for (const char* nm : {"q1", "q2", "rt"}) names.push_back(nm);
  auto sp = subgroup_to_fpgroup(k2sub, names);
  for (std::size_t tt = 0; tt < sp.H->rank(); ++tt)
    if (sp.H->elt_order_exp(sp.H->gen(tt)) > v.n)
      throw check_failed("witness_not_base: K2 generator exceeds exponent");
  GroupPtr k2 = restrict_variety(sp.H, v.n);
  std::vector<Elt> img2;
  for (std::size_t tt = 0; tt < k; ++tt) img2.push_back(k2->gen(tt));
  Morphism iota2 = hom(G, k2, img2);
  if (!is_injective(iota2))
    throw check_failed("witness_not_base: K2 does not contain G");
  // g is a p^i-th power modulo K2': lattice membership in the abelianization
  {
    Elt gk = iota2.apply(g);
    Subgroup pw = power_subgroup(k2, qi);
    if (!pw.span.abelian.member(gk.a))
      throw check_failed("witness_not_base: g is not a power modulo K2'");
  }

  Amalgam am = make_amalgam(cop1.into_left, iota2);
  EmbedCheck chk = is_weakly_embeddable(am, cap);
  if (chk.ok)
    throw check_failed("witness_not_base: root amalgam unexpectedly embeds");
  return BaseCounterexample{std::move(am), std::move(chk),
                            "g has a root modulo commutators on one side but "
                            "fails to commute with an exponent-p^i element on "
                            "the other"};
}

}  // namespace nil2
