#pragma once

#include <variant>

#include "nil2/classify.hpp"
#include "nil2/products.hpp"

// Extension builders: central root adjunction, turning central elements into
// commutators, and the checked witness constructions behind the necessity
// proofs.  Every construction machine-checks its postconditions (injective
// embeddings by order count, exponent by generator orders, membership by
// canonical forms) and throws check_failed rather than returning a bad
// object.

namespace nil2 {

struct CentralRootsResult {
  GroupPtr K;
  Morphism emb;            // G -> K
  std::vector<Elt> roots;  // h_i with h_i^{n_i} = emb(g_i), central in K
};

// K = (G × Π Z/(n_i a_i)) / <g_i h_i^{-n_i}>, a_i the order of g_i
CentralRootsResult adjoin_central_roots(
    GroupPtr G, const std::vector<std::pair<Elt, u32>>& wanted);

struct CentralCommutatorResult {
  GroupPtr K;
  Morphism emb;
  std::vector<std::pair<Elt, Elt>> witnesses;  // emb(g_i) = [q_i1, q_i2]
};

// K = (G × Π (Z/a_i ∐ Z/a_i)) / <g_i [t_i2, t_i1]>
CentralCommutatorResult central_to_commutator(GroupPtr G,
                                              const std::vector<Elt>& central);

struct WitnessTrace {
  GroupPtr k0, k1, k2, k3;
  Elt r, s;      // in k0: the adjoined p^i-th roots of x and y
  Elt t, v;      // in k2: central p^n-th roots of x^{p^{n-i}}, y^{p^{n-i}}
  Elt q1, q2, q3, q4;  // in k3: t^{p^i} = [q1,q2], v^{p^i} = [q3,q4]
  Elt rt, sv;    // in k3: r t^{-1} and s v^{-1}
};

struct WitnessExtension {
  GroupPtr K;      // exponent-p^n overgroup on the step-6 generators
  Morphism emb;    // G -> K, injective
  Elt d;           // [rt^{-1}, sv^{-1}]^{p^i}: in the dominion, outside G
  Vec xbar, ybar;
  u32 i = 0;
  u32 ambient_exponent_index = 0;  // the surrogate variety used internally
  WitnessTrace trace;
};

struct ConditionsHold {
  PairReport report;
};

// Builds the overgroup witnessing that G is not absolutely closed at the
// class pair (x̄, ȳ) and power index i, or reports that the closure
// conditions hold there.  The infinite coproduct of the proof is replaced by
// cyclic factors of order p^{n+i}; if any machine check fails the
// construction retries once with exponent p^{n+i+1}.
std::variant<WitnessExtension, ConditionsHold> witness_not_closed(
    GroupPtr G, const Vec& xbar, const Vec& ybar, u32 i, u64 cap);

// the lexicographically first failing triple, or nothing if G is closed
std::optional<WitnessExtension> witness_not_closed_any(GroupPtr G,
                                                       VarietyKind kind,
                                                       u64 cap);

struct BaseCounterexample {
  Amalgam amalgam;
  EmbedCheck failure;   // failure.ok == false, machine-checked
  std::string reason;
};

// a machine-checked non-embeddable amalgam with core G, or nothing when G is
// a base
std::optional<BaseCounterexample> witness_not_base(GroupPtr G, u64 cap);

// re-present an exponent-p^m group of exponent p^n (n <= m) in the smaller
// variety; the presentation carries over verbatim
GroupPtr restrict_variety(GroupPtr G, u32 n);

}  // namespace nil2
