#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nil2/core.hpp"
#include "nil2/errors.hpp"
#include "nil2/word.hpp"

// Finitely presented groups in the variety, stored as structured quotients
// F/N of the relatively free group.  The normal closure N (like every
// subgroup of F) is captured by an abelian lattice whose basis rows carry
// central lifts, together with a central lattice N ∩ F'; canonical element
// forms reduce against both, so equality of elements is equality of
// coordinates.

namespace nil2 {

struct Presentation {
  Variety v;
  std::vector<std::string> names;
  std::vector<Word> relators;
  std::size_t rank() const { return names.size(); }
};

// Subgroup-of-F data.
struct Span {
  zmod::Lattice abelian;    // mod q_gen, dim k
  std::vector<Vec> lifts;   // witness c-part per abelian basis row
  zmod::Lattice central;    // mod q_comm, dim k(k-1)/2
};

// gens are elements of F; extra_central are c-vectors known to lie in the
// subgroup (for normal closures: the brackets [relator, generator]).
Span make_span(const FreeCtx& f, const std::vector<FreeElement>& gens,
               const std::vector<Vec>& extra_central);
FreeElement span_canon(const FreeCtx& f, const Span& s, const FreeElement& g);
bool span_contains(const FreeCtx& f, const Span& s, const FreeElement& g);
u32 span_order_exp(const Span& s);
// witness element of the span with the given abelian part (must lie in the
// abelian lattice)
FreeElement span_lift(const FreeCtx& f, const Span& s, const Vec& a);
bool span_equal(const FreeCtx& f, const Span& a, const Span& b);

class FpGroup;
using GroupPtr = std::shared_ptr<const FpGroup>;
// canonical coordinates; the owning group is passed explicitly
using Elt = FreeElement;

class FpGroup {
 public:
  Presentation pres;
  FreeCtx f;
  std::vector<FreeElement> relator_elts;
  Span nspan;      // normal closure of the relators
  u32 order_exp;   // |G| = p^order_exp

  static GroupPtr build(Presentation pres);

  std::size_t rank() const { return f.k; }
  const Variety& variety() const { return f.v; }

  Elt reduce(const FreeElement& raw) const { return span_canon(f, nspan, raw); }
  Elt identity() const { return f.identity(); }
  Elt gen(std::size_t i) const { return reduce(f.gen(i)); }
  Elt mul(const Elt& x, const Elt& y) const { return reduce(f.mul(x, y)); }
  Elt pow(const Elt& x, int64_t m) const { return reduce(f.pow(x, m)); }
  Elt inv(const Elt& x) const { return pow(x, -1); }
  Elt comm(const Elt& x, const Elt& y) const { return reduce(f.comm(x, y)); }
  bool is_identity(const Elt& x) const { return f.is_identity(x); }
  // smallest e with x^(p^e) = identity
  u32 elt_order_exp(const Elt& x) const;

  Elt eval(const Word& w) const;
  Elt eval(const Word& w, const std::vector<Elt>& env) const;

  // p^order_exp as u64; throws if it does not fit
  u64 order_u64() const;
};

struct EltHash {
  std::size_t operator()(const Elt& e) const;
};

struct Subgroup {
  GroupPtr G;
  std::vector<Elt> gens;
  Span span;       // preimage in F; contains the relator span
  u32 order_exp;   // |H| = p^order_exp

  bool contains(const Elt& g) const;
};

Subgroup subgroup(GroupPtr G, std::vector<Elt> gens);
Subgroup trivial_subgroup(GroupPtr G);
Subgroup full_subgroup(GroupPtr G);
Subgroup center(GroupPtr G);
Subgroup derived_subgroup(GroupPtr G);
// G^q G', q a power of p
Subgroup power_subgroup(GroupPtr G, u32 q);
bool sub_equal(const Subgroup& a, const Subgroup& b);
bool sub_subset(const Subgroup& a, const Subgroup& b);

// exact enumeration of canonical forms (residue boxes, no dedup needed for
// whole groups); throws cap_exceeded
std::vector<Elt> enumerate_group(const FpGroup& G, u64 cap);
std::vector<Elt> enumerate_subgroup(const Subgroup& H, u64 cap);

// p^i-torsion of a subgroup with commuting elements (typically the center);
// enumeration-based because the power map is quadratic in the coordinates
Subgroup omega_subgroup(const Subgroup& inside, u32 i, u64 cap);

struct CyclicDecomp {
  u32 p = 3;
  std::vector<u32> exps;  // descending; trivial factors dropped
  bool operator==(const CyclicDecomp&) const = default;
  u32 order_exp() const;
  bool cyclic_or_trivial() const { return exps.size() <= 1; }
};

struct Morphism {
  GroupPtr dom, cod;
  std::vector<Elt> images;
  Elt apply(const Elt& g) const;
};

// verifies every relator of dom maps to the identity
Morphism hom(GroupPtr dom, GroupPtr cod, std::vector<Elt> images);
Subgroup image_subgroup(const Morphism& m);
bool is_injective(const Morphism& m);
// structured kernel (no enumeration); requires dom and cod in the same variety
Subgroup kernel_subgroup(const Morphism& m);

struct QuotientResult {
  GroupPtr Q;
  Morphism proj;
};
QuotientResult quotient(GroupPtr G, const std::vector<Word>& extra);

struct AbelianizationResult {
  CyclicDecomp decomp;
  GroupPtr A;      // ⊕ Z/p^{e_i} as an FpGroup
  Morphism proj;   // G -> A
};
AbelianizationResult abelianization(GroupPtr G);

// |H/(K · H^p · H')| <= p test on abelian lattices, for K ⊆ H
bool lattice_quotient_cyclic_or_trivial(u32 p, const zmod::Lattice& h,
                                        const zmod::Lattice& k);

// presentation of a subgroup on its own generator list, plus the isomorphism
// onto it; exact (pure lattice algebra, no enumeration)
struct SubgroupPresentation {
  GroupPtr H;
  Morphism iso;  // H -> ambient group, gens -> the subgroup's generators
};
SubgroupPresentation subgroup_to_fpgroup(const Subgroup& H,
                                         std::vector<std::string> names = {});

// re-present an exponent-p^n group in the variety of exponent p^m, m >= n
struct EmbedResult {
  GroupPtr K;
  Morphism emb;
};
EmbedResult embed_in_variety(GroupPtr G, u32 m);

// word for an element of F with the given coordinates
Word element_to_word(const FreeCtx& f, const FreeElement& e);

FreeElement product_by_exponents(const FreeCtx& f,
                                 const std::vector<FreeElement>& gens,
                                 const Vec& m);

}  // namespace nil2
