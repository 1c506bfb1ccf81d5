#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nil2/zmod.hpp"

// Normal-form arithmetic in the relatively free nilpotent-class-2 group of
// exponent p^n on k generators.  An element is a pair of coordinate vectors
// (a, c): generator exponents mod q_gen and commutator coordinates mod q_comm
// on the basis [x_j, x_i], j > i, pairs ordered lexicographically by (j, i).
// Multiplication collects via the bilinear correction kappa(a, b)_{(j,i)} =
// a_j * b_i; all identities of class-2 collection follow from it.

namespace nil2 {

using zmod::u32;
using zmod::u64;
using zmod::Vec;

struct Variety {
  u32 p = 3;       // prime
  u32 n = 1;       // exponent index: the variety has exponent p^n
  u32 q_gen = 3;   // p^n
  u32 q_comm = 3;  // p^n for odd p; p^(n-1) for p = 2

  static Variety make(u32 p, u32 n);
  bool operator==(const Variety&) const = default;
};

struct FreeElement {
  Vec a;  // length k
  Vec c;  // length k(k-1)/2
  bool operator==(const FreeElement&) const = default;
};

inline std::size_t pair_count(std::size_t k) { return k * (k - 1) / 2; }
// index of basis pair (j, i), j > i, in (j,i)-lexicographic order
inline std::size_t pair_index(std::size_t j, std::size_t i) {
  return j * (j - 1) / 2 + i;
}

// Free-group context: a variety plus a generator count.
struct FreeCtx {
  Variety v;
  std::size_t k = 0;

  FreeCtx() = default;
  FreeCtx(Variety v_, std::size_t k_) : v(v_), k(k_) {}

  std::size_t pairs() const { return pair_count(k); }
  FreeElement identity() const { return {Vec(k, 0), Vec(pairs(), 0)}; }
  FreeElement gen(std::size_t i) const;

  // kappa(u, v)_{(j,i)} = u_j * v_i  (mod q_comm)
  Vec kappa(const Vec& ua, const Vec& va) const;
  // c-part of the commutator of elements with the given a-parts
  Vec bracket_c(const Vec& ua, const Vec& va) const;

  FreeElement mul(const FreeElement& x, const FreeElement& y) const;
  FreeElement pow(const FreeElement& x, int64_t m) const;
  FreeElement inv(const FreeElement& x) const { return pow(x, -1); }
  FreeElement comm(const FreeElement& x, const FreeElement& y) const;
  bool is_identity(const FreeElement& x) const;

  u32 order_exp() const;  // |F| = p^order_exp

  void check_same(const FreeCtx& o) const {
    if (!(v == o.v) || k != o.k)
      throw std::invalid_argument("free-group context mismatch");
  }
};

// C(m,2) mod q, computed over the integers first (sound for p = 2)
u32 binom2_mod(int64_t m, u32 q);

}  // namespace nil2
