#include "nil2/products.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nil2/enumerate.hpp"

namespace nil2 {

CyclicDecomp tensor_decomp(const CyclicDecomp& a, const CyclicDecomp& b) {
  CyclicDecomp t;
  t.p = a.p;
  for (u32 e : a.exps)
    for (u32 f : b.exps) t.exps.push_back(std::min(e, f));
  std::sort(t.exps.rbegin(), t.exps.rend());
  return t;
}

namespace {

Word shift_gens(const Word& w, std::size_t off) {
  Word r = w;
  if (r.kind == Word::Kind::Gen) r.gen += off;
  for (auto& s : r.sub) s = shift_gens(s, off);
  return r;
}

std::vector<std::string> merged_names(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> names = a;
  std::set<std::string> used(a.begin(), a.end());
  for (const auto& n : b) {
    std::string cand = n;
    while (used.count(cand)) cand += "'";
    used.insert(cand);
    names.push_back(cand);
  }
  return names;
}

CoproductResult raw_coproduct(GroupPtr A, GroupPtr C,
                              const std::vector<Word>& extra) {
  if (!(A->f.v == C->f.v))
    throw std::invalid_argument("coproduct: same variety required");
  Presentation pres;
  pres.v = A->f.v;
  pres.names = merged_names(A->pres.names, C->pres.names);
  for (const auto& w : A->pres.relators) pres.relators.push_back(w);
  for (const auto& w : C->pres.relators)
    pres.relators.push_back(shift_gens(w, A->rank()));
  for (const auto& w : extra) pres.relators.push_back(w);
  GroupPtr m = FpGroup::build(std::move(pres));

  std::vector<Elt> la, lc;
  for (std::size_t i = 0; i < A->rank(); ++i) la.push_back(m->gen(i));
  for (std::size_t i = 0; i < C->rank(); ++i) lc.push_back(m->gen(A->rank() + i));
  CoproductResult r;
  r.M = m;
  r.into_left = hom(A, m, la);
  r.into_right = hom(C, m, lc);
  return r;
}

}  // namespace

CoproductResult coproduct(GroupPtr A, GroupPtr C) {
  CoproductResult r = raw_coproduct(A, C, {});
  r.tensor = tensor_decomp(abelianization(A).decomp, abelianization(C).decomp);
  if (r.M->order_exp != A->order_exp + C->order_exp + r.tensor.order_exp())
    throw check_failed("coproduct: order violates the tensor identity");
  if (!is_injective(r.into_left) || !is_injective(r.into_right))
    throw check_failed("coproduct: canonical injection not injective");
  return r;
}

Amalgam make_amalgam(Morphism phi_left, Morphism phi_right) {
  if (phi_left.dom != phi_right.dom)
    throw std::invalid_argument("amalgam: maps must share their domain");
  if (!is_injective(phi_left) || !is_injective(phi_right))
    throw std::invalid_argument("amalgam: core maps must be injective");
  return Amalgam{std::move(phi_left), std::move(phi_right)};
}

Amalgam special_amalgam(const Morphism& phi) { return make_amalgam(phi, phi); }

CoproductResult amalgamated_coproduct(const Amalgam& am) {
  GroupPtr A = am.left(), C = am.right(), B = am.core();
  std::vector<Word> extra;
  for (std::size_t i = 0; i < B->rank(); ++i) {
    Elt bl = am.phi_left.images[i];
    Elt br = am.phi_right.images[i];
    Word wl = element_to_word(A->f, bl);
    Word wr = shift_gens(element_to_word(C->f, br), A->rank());
    extra.push_back(Word::concat({wl, Word::power(std::move(wr), -1)}));
  }
  return raw_coproduct(A, C, extra);
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
  std::vector<Elt> images;
  for (const auto& g : inner.images) images.push_back(outer.apply(g));
  return Morphism{inner.dom, outer.cod, std::move(images)};
}

namespace {

// a nontrivial element of a subgroup, if any (its first non-identity
// generator)
std::optional<Elt> nontrivial_element(const Subgroup& h) {
  for (const auto& g : h.gens)
    if (!h.G->is_identity(g)) return g;
  return std::nullopt;
}

}  // namespace

EmbedCheck is_weakly_embeddable(const Amalgam& am, u64) {
  EmbedCheck r;
  r.cop = amalgamated_coproduct(am);
  const Morphism* maps[2] = {&r.cop.into_left, &r.cop.into_right};
  for (int side = 0; side < 2; ++side) {
    if (is_injective(*maps[side])) continue;
    Subgroup ker = kernel_subgroup(*maps[side]);
    auto w = nontrivial_element(ker);
    if (!w) throw check_failed("weak embeddability: non-injective map with trivial kernel");
    r.ok = false;
    r.side = side;
    r.witness = {*w, maps[side]->dom->identity()};
    r.reason = "two distinct elements of one side are identified in the "
               "amalgamated coproduct";
    return r;
  }
  r.ok = true;
  return r;
}

EmbedCheck is_strongly_embeddable(const Amalgam& am, u64 cap) {
  EmbedCheck r = is_weakly_embeddable(am, cap);
  if (!r.ok) {
    r.reason = "not weakly embeddable: " + r.reason;
    return r;
  }
  // the two images must meet exactly in the image of the core
  Subgroup img_l = image_subgroup(r.cop.into_left);
  Subgroup img_r = image_subgroup(r.cop.into_right);
  Subgroup img_core = image_subgroup(compose(r.cop.into_left, am.phi_left));
  const Subgroup& small = img_l.order_exp <= img_r.order_exp ? img_l : img_r;
  const Subgroup& other = img_l.order_exp <= img_r.order_exp ? img_r : img_l;
  for (const auto& m : enumerate_subgroup(small, cap)) {
    if (!other.contains(m) || img_core.contains(m)) continue;
    // collapsing pair: preimages of m on each side
    r.ok = false;
    r.side = 2;
    r.reason = "elements outside the core are identified across the sides";
    for (const auto& a : enumerate_group(*am.left(), cap))
      if (r.cop.into_left.apply(a) == m) {
        r.witness.push_back(a);
        break;
      }
    for (const auto& c : enumerate_group(*am.right(), cap))
      if (r.cop.into_right.apply(c) == m) {
        r.witness.push_back(c);
        break;
      }
    return r;
  }
  r.ok = true;
  return r;
}

bool maier_condition_i(const Amalgam& am, u64 cap) {
  GroupPtr B = am.core();
  Subgroup dl = derived_subgroup(am.left()), dr = derived_subgroup(am.right());
  Subgroup zl = center(am.left()), zr = center(am.right());
  for (const auto& b : enumerate_group(*B, cap)) {
    if (dl.contains(am.phi_left.apply(b)) && !zr.contains(am.phi_right.apply(b)))
      return false;
    if (dr.contains(am.phi_right.apply(b)) && !zl.contains(am.phi_left.apply(b)))
      return false;
  }
  return true;
}

bool maier_strong_check(const Amalgam& am, u64 cap) {
  if (!maier_condition_i(am, cap)) return false;
  GroupPtr A = am.left(), C = am.right(), B = am.core();
  const Variety& v = A->f.v;
  std::size_t kb = B->rank();

  // preimage lookup through the injective core maps
  std::map<std::pair<Vec, Vec>, Elt> pre_l, pre_r;
  for (const auto& b : enumerate_group(*B, cap)) {
    Elt il = am.phi_left.apply(b), ir = am.phi_right.apply(b);
    pre_l[{il.a, il.c}] = b;
    pre_r[{ir.a, ir.c}] = b;
  }

  for (u32 i = 1; i < v.n; ++i) {
    u32 q = 1;
    for (u32 t = 0; t < i; ++t) q *= v.p;

    // pairs (h̄, ḡ) with Φ̄(h̄) ≡ q ḡ modulo the side's relator lattice form a
    // lattice; the condition value is bilinear in the two pair lattices and
    // lands in the subgroup {(Φ_C(w), Φ_A(w))}, so basis pairs suffice
    auto pair_lattice = [&](GroupPtr S, const Morphism& phi) {
      std::size_t ks = S->rank();
      zmod::Mat m(v.q_gen, kb + ks, ks);
      for (std::size_t r = 0; r < kb; ++r)
        for (std::size_t t = 0; t < ks; ++t) m.at(r, t) = phi.images[r].a[t];
      for (std::size_t r = 0; r < ks; ++r)
        m.at(kb + r, r) = (v.q_gen - q % v.q_gen) % v.q_gen;
      return zmod::kernel(v.p, v.q_gen, m, S->nspan.abelian);
    };
    zmod::Lattice la = pair_lattice(A, am.phi_left);
    zmod::Lattice lc = pair_lattice(C, am.phi_right);

    for (const auto& alpha : la.rows) {
      Vec hbar(alpha.begin(), alpha.begin() + kb);
      Vec gbar(alpha.begin() + kb, alpha.end());
      Elt h = B->reduce(FreeElement{hbar, Vec(B->f.pairs(), 0)});
      Elt g = A->reduce(FreeElement{gbar, Vec(A->f.pairs(), 0)});
      for (const auto& beta : lc.rows) {
        Vec hbar2(beta.begin(), beta.begin() + kb);
        Vec kbar(beta.begin() + kb, beta.end());
        Elt h2 = B->reduce(FreeElement{hbar2, Vec(B->f.pairs(), 0)});
        Elt k = C->reduce(FreeElement{kbar, Vec(C->f.pairs(), 0)});
        // [g^q g', k] transported as [Φ_C(h), k] in C; [g, k^q k'] as
        // [g, Φ_A(h2)] in A; both must name the same core element
        Elt w1 = C->comm(am.phi_right.apply(h), k);
        Elt w2 = A->comm(g, am.phi_left.apply(h2));
        auto it1 = pre_r.find({w1.a, w1.c});
        auto it2 = pre_l.find({w2.a, w2.c});
        if (it1 == pre_r.end() || it2 == pre_l.end()) return false;
        if (!(it1->second == it2->second)) return false;
      }
    }
  }
  return true;
}

}  // namespace nil2
