#pragma once

#include <optional>

#include "nil2/fp_group.hpp"
#include "nil2/products.hpp"

// Dominions and the classification predicates: absolutely closed (in the
// full class-2 variety and in the exponent-p^n subvariety), weak/strong
// amalgamation base, root adjunction, and the even-exponent condition
// checkers.  Everything is decided through lattice solvability; the
// quantifiers over group elements reduce to classes modulo the derived
// subgroup because commutators only depend on those classes.

namespace nil2 {

struct DominionCertificate {
  Vec rbar, sbar;  // classes in K/K'
  u32 q;           // the prime power p^i
  Elt value;       // [r,s]^q, an element of K outside the subgroup
};

struct DominionResult {
  Subgroup d;
  std::vector<DominionCertificate> certificates;
};

// dominion of G in K (odd p), by the generated-brackets description
DominionResult dominion(GroupPtr K, const Subgroup& G);

// independent oracle: the special amalgam (K, K; G), amalgamated coproduct,
// and the intersection of the two copies of K pulled back to K
Subgroup dominion_oracle(GroupPtr K, const Subgroup& G, u64 cap);

enum class VarietyKind { N2, Bpn };

struct ConditionWitness {
  char condition = '?';  // 'a', 'b', 'c' or 'd'
  int64_t a = 0, b = 0, c = 0, j = 0;
  u32 alpha = 0;
  std::optional<Elt> g1, g2;
};

struct PairReport {
  Vec xbar, ybar;
  u32 i = 0;
  std::vector<ConditionWitness> satisfied;  // empty = the pair fails everything
  bool none() const { return satisfied.empty(); }
};

struct ClosureReport {
  bool closed = false;
  VarietyKind kind = VarietyKind::Bpn;
  std::vector<PairReport> pairs;
  std::optional<std::size_t> first_failure;  // index into pairs
};

// conditions (a)-(d) per class pair and power index for the exponent-p^n
// variety; conditions (a) and (d) alone, with i running to n, for the full
// class-2 variety.  full_report evaluates every condition instead of the
// first hit.
ClosureReport is_absolutely_closed(GroupPtr G, VarietyKind kind,
                                   bool full_report, u64 cap);

// the same decision for one class pair and one power index
PairReport classify_class_pair(GroupPtr G, const Vec& xbar, const Vec& ybar,
                               u32 i, VarietyKind kind, bool full_report);

// sample tuples (a, b, c, g1, g2) satisfying the paired congruences
//   g1^{p^i} ≡ x^a y^b,  g2^{p^i} ≡ x^{b+j} y^c  (mod G'),
// one per affine-lattice direction; empty when insoluble
std::vector<ConditionWitness> sample_congruence_witnesses(GroupPtr G,
                                                          const Vec& xbar,
                                                          const Vec& ybar, u32 i,
                                                          u32 jshift);

struct BaseElementReport {
  Vec gbar;
  u32 i = 0;
  bool in_power_subgroup = false;
  std::optional<int64_t> c;  // with y below: y^{p^i} ≡ g^c (mod G') and [y,g] ≠ e
  std::optional<Elt> y;
  bool ok() const { return in_power_subgroup || c.has_value(); }
};

struct BaseReport {
  bool is_base = false;
  bool center_is_derived = false;
  std::optional<Elt> central_non_commutator;  // when Z(G) ≠ G'
  std::vector<BaseElementReport> items;
  std::optional<std::size_t> first_failure;
};

// weak = strong amalgamation base test via Z(G) = G' plus the per-element
// root/commutation condition (odd p)
BaseReport is_amalgamation_base(GroupPtr G, u64 cap);

struct RootQuery {
  std::vector<Elt> g;
  std::vector<u32> n;  // the wanted root degrees, powers of p
};

// Saracino's criterion for an extension with n_i-th roots of g_i; exhaustive
// over the constrained coefficient arrays (m <= 2 unless allow_large)
bool has_root_extension(GroupPtr G, const RootQuery& q, bool allow_large = false);

// evaluates both sides of the key identity [r,s]^{j p^i} = [g1,x][g2,y]
// after checking the stated congruences; throws on precondition violation
bool keylemma_check(GroupPtr K, const Elt& x, const Elt& y, const Elt& r,
                    const Elt& s, u32 i, int64_t j, int64_t a, int64_t b,
                    int64_t c, const Elt& g1, const Elt& g2);

struct EvenReport {
  bool ok = false;
  bool omega_equals_power = false;  // Ω^n(Z(G)) = G^{2^n} G'
  u32 omega_order_exp = 0, power_order_exp = 0;
  std::optional<Vec> failing_class;
  std::optional<u32> failing_i;
};

// §-style finite condition checkers for exponent 2^{n+1} (no dominion claims
// are made at p = 2)
EvenReport even_amalgam_condition(GroupPtr G, u64 cap);
bool even_weak_base_condition(GroupPtr G, u64 cap);

struct ChainResult {
  DominionResult dom;
  GroupPtr d_presented;   // the dominion on its own generators
  ClosureReport d_report;
};

// D = dominion(K, G) together with the classification of D; D is never
// absolutely closed when G is not
ChainResult dominion_closure_chain(GroupPtr K, const Subgroup& G,
                                   VarietyKind kind, u64 cap);

// class representatives of G/G' (canonical residues of the relator lattice)
std::vector<Vec> abelian_class_reps(const FpGroup& G, u64 cap);

}  // namespace nil2
