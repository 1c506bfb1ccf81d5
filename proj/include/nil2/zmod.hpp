#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

// Exact linear algebra over the residue rings Z/p^e.
//
// Row spans are kept in Howell canonical form: an echelon basis whose pivots
// are powers of p, closed under annihilator rows, with above-pivot entries
// reduced modulo the pivot.  This is the canonical form for submodules of
// (Z/p^e)^d: two spans are equal iff their Howell bases are identical, and
// coset representatives obtained by reduction are canonical.

namespace nil2::zmod {

using u32 = uint32_t;
using u64 = uint64_t;
using Vec = std::vector<u32>;

// v_p(x) for x in [0, q); val(0) = e where q = p^e.
u32 valuation(u32 p, u32 q, u32 x);

// inverse of a unit mod q
u32 unit_inverse(u32 u, u32 q);

struct Mat {
  u32 q = 0;
  std::size_t rows = 0, cols = 0;
  std::vector<u32> data;  // row-major, entries in [0, q)

  Mat() = default;
  Mat(u32 q_, std::size_t r, std::size_t c) : q(q_), rows(r), cols(c), data(r * c, 0) {}
  u32& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  u32 at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  Vec row(std::size_t r) const {
    return Vec(data.begin() + r * cols, data.begin() + (r + 1) * cols);
  }
};

struct Lattice {
  u32 p = 0, q = 0;
  std::size_t dim = 0;
  std::vector<Vec> rows;        // Howell basis, possibly empty
  std::vector<std::size_t> pivcol;
  std::vector<u32> pivval;      // p^v, divides q

  bool member(const Vec& v) const;
  // canonical coset representative of v modulo the span
  Vec residue(const Vec& v) const;
  // as above; coeffs[i] in [0, q/pivval[i]) reconstruct v - residue
  Vec residue(const Vec& v, Vec* coeffs) const;

  // log_p of the span size
  u32 order_exp() const;
  bool is_zero() const { return rows.empty(); }
  bool is_full() const;

  // every span element exactly once, as sum of coefficient boxes
  // [0, q/pivval[i]); stops early (returns false) if cb returns false
  bool for_each(const std::function<bool(const Vec&)>& cb) const;

  bool operator==(const Lattice& o) const {
    return q == o.q && dim == o.dim && rows == o.rows;
  }
};

Lattice howell(u32 p, u32 q, std::size_t dim, const std::vector<Vec>& gens);
// all canonical coset representatives of (Z/q)^dim modulo L
std::vector<Vec> residue_reps(const Lattice& l, u64 cap);
Lattice zero_lattice(u32 p, u32 q, std::size_t dim);
Lattice full_lattice(u32 p, u32 q, std::size_t dim);
Lattice lattice_sum(const Lattice& a, const Lattice& b);
bool lattice_subset(const Lattice& a, const Lattice& b);

// Howell basis of the input rows together with row transforms (basis row i =
// trans[i] * input matrix) and the kernel of the row map z -> z * input.
struct Tracked {
  Lattice lat;
  std::vector<Vec> trans;  // one per basis row, length = #input rows
  Lattice row_kernel;      // dim = #input rows
};
Tracked howell_tracked(u32 p, u32 q, std::size_t dim, const std::vector<Vec>& gens);

// {x in (Z/Q)^rows(M) : (x mod q) * M in L}.  Requires q | Q; pass Q = q for
// the single-modulus case.  Mixed moduli arise when the domain carries
// generator coordinates and the target commutator coordinates (p = 2).
Lattice kernel(u32 p, u32 Q, const Mat& M, const Lattice& L);

struct Solution {
  Vec particular;   // one x with x*M ≡ t (mod L)
  Lattice homogeneous;  // kernel(M, L); full solution set = particular + homogeneous
};
// all x with x*M ≡ t modulo L; nullopt if insoluble
std::optional<Solution> solve(u32 p, const Mat& M, const Lattice& L, const Vec& t);

// prefactored form of solve for a fixed system, for use in inner loops
class Solver {
 public:
  Solver(u32 p, const Mat& M, const Lattice& L);
  // one x with x*M ≡ t (mod L), or nullopt
  std::optional<Vec> particular(const Vec& t) const;
  const Lattice& kernel() const { return kernel_; }

 private:
  std::size_t nrows_;
  u32 q_;
  Tracked tracked_;
  Lattice kernel_;
};

}  // namespace nil2::zmod
