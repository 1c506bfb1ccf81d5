#pragma once

#include <optional>

#include "nil2/fp_group.hpp"

// Coproducts and amalgamated coproducts in the variety.  The free coproduct
// of presented groups is presented on the disjoint union of the generators
// with the union of the relators; its cross-commutator subgroup is the tensor
// product of the abelianizations, which gives the order identity
// |A ∐ C| = |A| · |C| · |A^ab ⊗ C^ab| asserted on every construction.

namespace nil2 {

CyclicDecomp tensor_decomp(const CyclicDecomp& a, const CyclicDecomp& b);

struct CoproductResult {
  GroupPtr M;
  Morphism into_left;    // λ_A
  Morphism into_right;   // λ_C
  CyclicDecomp tensor;   // decomposition of [A, C] in the free coproduct
};

CoproductResult coproduct(GroupPtr A, GroupPtr C);

struct Amalgam {
  Morphism phi_left;   // Φ_A : B -> A
  Morphism phi_right;  // Φ_C : B -> C
  GroupPtr core() const { return phi_left.dom; }
  GroupPtr left() const { return phi_left.cod; }
  GroupPtr right() const { return phi_right.cod; }
};

// verifies the two maps share their domain and are injective
Amalgam make_amalgam(Morphism phi_left, Morphism phi_right);
// the special amalgam (A, A; B) along an injective Φ: B -> A
Amalgam special_amalgam(const Morphism& phi);

// coproduct of the sides with the core identified; injections may collapse
CoproductResult amalgamated_coproduct(const Amalgam& am);

struct EmbedCheck {
  bool ok = false;
  CoproductResult cop;
  // on failure: side 0/1 and a pair of distinct elements of that side with
  // equal images (weak), or one element from each side meeting outside the
  // core (strong)
  int side = -1;
  std::vector<Elt> witness;
  std::string reason;
};

EmbedCheck is_weakly_embeddable(const Amalgam& am, u64 cap);
EmbedCheck is_strongly_embeddable(const Amalgam& am, u64 cap);

// Maier's strong-embeddability conditions, checked inside the sides (an
// independent route; never consults the coproduct)
bool maier_strong_check(const Amalgam& am, u64 cap);
// the centrality precondition alone (necessary, cheap)
bool maier_condition_i(const Amalgam& am, u64 cap);

Morphism compose(const Morphism& outer, const Morphism& inner);

}  // namespace nil2
