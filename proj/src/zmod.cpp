#include "nil2/zmod.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

#include "nil2/errors.hpp"
#include "nil2/kernels.hpp"

namespace nil2::zmod {

u32 valuation(u32 p, u32 q, u32 x) {
  if (x == 0) {
    u32 e = 0;
    while (q > 1) q /= p, ++e;
    return e;
  }
  u32 v = 0;
  while (x % p == 0) x /= p, ++v;
  return v;
}

u32 unit_inverse(u32 u, u32 q) {
  // extended euclid; u must be a unit mod q
  int64_t r0 = q, r1 = u % q, s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t k = r0 / r1;
    std::swap(r0 -= k * r1, r1);
    std::swap(s0 -= k * s1, s1);
  }
  if (r0 != 1) throw std::invalid_argument("unit_inverse: not a unit");
  return static_cast<u32>(((s0 % q) + q) % q);
}

namespace {

struct PairRow {
  Vec v;   // dim coordinates
  Vec t;   // transform (empty when untracked)
};

void row_submul(Vec& a, const Vec& b, u64 f, u32 q) {
  // a -= f*b
  for (std::size_t i = 0; i < a.size(); ++i) {
    u64 sub = (f * b[i]) % q;
    a[i] = static_cast<u32>((a[i] + q - sub) % q);
  }
}

void row_scale(Vec& a, u64 f, u32 q) {
  for (auto& x : a) x = static_cast<u32>((x * f) % q);
}

bool row_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](u32 x) { return x == 0; });
}

// Insertion-based Howell construction.  Maintains a staircase basis sorted by
// pivot column with unit-normalized pivots p^v; every inserted basis row gets
// its annihilator (q/p^v)*row enqueued, which closes the span under
// annihilators.  Rows that reduce to zero contribute their transform to the
// row kernel.
struct Builder {
  u32 p, q;
  std::size_t dim, nin;
  bool tracked;
  std::vector<PairRow> basis;  // sorted by pivot column
  std::vector<std::size_t> pivcol;
  std::vector<u32> pivval;
  std::vector<Vec> kernel_gens;
  std::deque<PairRow> queue;

  Builder(u32 p_, u32 q_, std::size_t dim_, std::size_t nin_, bool tracked_)
      : p(p_), q(q_), dim(dim_), nin(nin_), tracked(tracked_) {}

  std::ptrdiff_t basis_at(std::size_t col) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (pivcol[i] == col) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }

  void submul(PairRow& a, const PairRow& b, u64 f) {
    row_submul(a.v, b.v, f, q);
    if (tracked) row_submul(a.t, b.t, f, q);
  }

  void insert_at(std::size_t col, PairRow&& r) {
    u32 v = valuation(p, q, r.v[col]);
    u32 piv = 1;
    for (u32 i = 0; i < v; ++i) piv *= p;
    u32 unit = r.v[col] / piv;  // exact: r.v[col] = unit * p^v with unit a unit
    if (unit != 1) {
      u64 inv = unit_inverse(unit, q);
      row_scale(r.v, inv, q);
      if (tracked) row_scale(r.t, inv, q);
    }
    std::size_t pos = 0;
    while (pos < basis.size() && pivcol[pos] < col) ++pos;
    basis.insert(basis.begin() + pos, PairRow{});
    pivcol.insert(pivcol.begin() + pos, col);
    pivval.insert(pivval.begin() + pos, piv);
    basis[pos] = std::move(r);
    if (piv > 1) {
      PairRow ann = basis[pos];
      u64 f = q / piv;
      row_scale(ann.v, f, q);
      if (tracked) row_scale(ann.t, f, q);
      queue.push_back(std::move(ann));
    }
  }

  // Reduce r against the basis; returns the column where r demands insertion
  // (npos if it reduced away).  In the swap case the displaced basis row is
  // pushed back onto the queue.
  void process(PairRow&& r) {
    for (std::size_t col = 0; col < dim; ++col) {
      if (r.v[col] == 0) continue;
      std::ptrdiff_t bi = basis_at(col);
      if (bi < 0) {
        insert_at(col, std::move(r));
        return;
      }
      u32 piv = pivval[bi];
      if (r.v[col] % piv == 0) {
        submul(r, basis[bi], r.v[col] / piv);
        // entry now zero; continue right
      } else {
        // incoming row has strictly smaller valuation at this column: it
        // becomes the new pivot row, the old one goes back on the queue
        PairRow displaced = std::move(basis[bi]);
        basis.erase(basis.begin() + bi);
        pivcol.erase(pivcol.begin() + bi);
        pivval.erase(pivval.begin() + bi);
        insert_at(col, std::move(r));
        queue.push_back(std::move(displaced));
        return;
      }
    }
    if (tracked && !row_zero(r.t)) kernel_gens.push_back(std::move(r.t));
  }

  void run_queue() {
    while (!queue.empty()) {
      PairRow r = std::move(queue.front());
      queue.pop_front();
      process(std::move(r));
    }
  }

  void back_normalize() {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        u32 e = basis[j].v[pivcol[i]];
        if (e >= pivval[i]) submul(basis[j], basis[i], e / pivval[i]);
      }
    }
  }

  // Re-enqueue every annihilator; at the fixpoint they all reduce to zero and
  // deposit their transforms in the kernel.  A handful of rounds at most.
  void finish() {
    run_queue();
    for (int round = 0; round < 64; ++round) {
      back_normalize();
      std::size_t nb = basis.size();
      auto piv_before = pivval;
      auto col_before = pivcol;
      for (std::size_t i = 0; i < nb; ++i) {
        if (pivval[i] == 1) continue;
        PairRow ann = basis[i];
        u64 f = q / pivval[i];
        row_scale(ann.v, f, q);
        if (tracked) row_scale(ann.t, f, q);
        queue.push_back(std::move(ann));
      }
      run_queue();
      if (pivval == piv_before && pivcol == col_before) return;
    }
    throw std::logic_error("howell: normalization did not stabilize");
  }
};

Lattice finalize_lattice(u32 p, u32 q, std::size_t dim, Builder& b) {
  Lattice l;
  l.p = p;
  l.q = q;
  l.dim = dim;
  for (auto& r : b.basis) l.rows.push_back(r.v);
  l.pivcol = b.pivcol;
  l.pivval = b.pivval;
  return l;
}

}  // namespace

Lattice howell(u32 p, u32 q, std::size_t dim, const std::vector<Vec>& gens) {
  Builder b(p, q, dim, gens.size(), false);
  for (const auto& g : gens) {
    assert(g.size() == dim);
    PairRow r{g, {}};
    bool any = false;
    for (auto& x : r.v) {
      x %= q;
      any |= (x != 0);
    }
    if (any) b.queue.push_back(std::move(r));
  }
  b.finish();
  return finalize_lattice(p, q, dim, b);
}

Tracked howell_tracked(u32 p, u32 q, std::size_t dim, const std::vector<Vec>& gens) {
  Builder b(p, q, dim, gens.size(), true);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    PairRow r;
    r.v = gens[i];
    for (auto& x : r.v) x %= q;
    r.t.assign(gens.size(), 0);
    r.t[i] = 1;
    b.queue.push_back(std::move(r));
  }
  b.finish();
  Tracked out;
  out.lat = finalize_lattice(p, q, dim, b);
  for (auto& r : b.basis) out.trans.push_back(r.t);
  out.row_kernel = howell(p, q, gens.size(), b.kernel_gens);
  return out;
}

bool Lattice::is_full() const {
  if (rows.size() != dim) return false;
  for (u32 pv : pivval)
    if (pv != 1) return false;
  return true;
}

Vec Lattice::residue(const Vec& v, Vec* coeffs) const {
  assert(v.size() == dim);
  Vec r = v;
  for (auto& x : r) x %= q;
  if (coeffs) coeffs->assign(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    u32 e = r[pivcol[i]];
    u32 t = e / pivval[i];
    if (t) {
      row_submul(r, rows[i], t, q);
      // entry is now e mod pivval[i]
    }
    if (coeffs) (*coeffs)[i] = t;
  }
  return r;
}

Vec Lattice::residue(const Vec& v) const { return residue(v, nullptr); }

bool Lattice::member(const Vec& v) const {
  if (v.size() != dim) throw std::invalid_argument("lattice member: dimension mismatch");
  return row_zero(residue(v));
}

u32 Lattice::order_exp() const {
  u32 eq = valuation(p, q, 0);  // e with q = p^e
  u32 s = 0;
  for (u32 pv : pivval) s += eq - valuation(p, q, pv);
  return s;
}

bool Lattice::for_each(const std::function<bool(const Vec&)>& cb) const {
  // odometer over coefficient boxes [0, q/pivval[i])
  Vec cur(dim, 0);
  if (rows.empty()) return cb(cur);
  std::vector<u32> box(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) box[i] = q / pivval[i];
  std::vector<u32> digit(rows.size(), 0);
  while (true) {
    if (!cb(cur)) return false;
    std::size_t i = 0;
    for (; i < rows.size(); ++i) {
      ++digit[i];
      for (std::size_t c = 0; c < dim; ++c)
        cur[c] = static_cast<u32>((cur[c] + rows[i][c]) % q);
      if (digit[i] < box[i]) break;
      // roll over: subtract box[i]*row == add (q - box*row mod q)
      digit[i] = 0;
      u64 f = (static_cast<u64>(box[i]) % q);
      for (std::size_t c = 0; c < dim; ++c) {
        u64 sub = (f * rows[i][c]) % q;
        cur[c] = static_cast<u32>((cur[c] + q - sub) % q);
      }
    }
    if (i == rows.size()) return true;
  }
}

std::vector<Vec> residue_reps(const Lattice& l, u64 cap) {
  // residues are exactly the vectors whose pivot-column entries lie below the
  // pivot; every other coordinate ranges over the full ring
  std::vector<u32> limit(l.dim, l.q);
  for (std::size_t i = 0; i < l.rows.size(); ++i) limit[l.pivcol[i]] = l.pivval[i];
  u64 count = 1;
  for (u32 lim : limit) {
    if (count > cap) throw nil2::cap_exceeded("residue enumeration cap");
    count *= lim;
  }
  if (count > cap) throw nil2::cap_exceeded("residue enumeration cap");
  std::vector<Vec> out;
  out.reserve(count);
  Vec v(l.dim, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    for (; i < l.dim; ++i) {
      if (++v[i] < limit[i]) break;
      v[i] = 0;
    }
    if (i == l.dim) break;
  }
  return out;
}

Lattice zero_lattice(u32 p, u32 q, std::size_t dim) {
  Lattice l;
  l.p = p;
  l.q = q;
  l.dim = dim;
  return l;
}

Lattice full_lattice(u32 p, u32 q, std::size_t dim) {
  std::vector<Vec> rows(dim, Vec(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) rows[i][i] = 1;
  return howell(p, q, dim, rows);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  assert(a.q == b.q && a.dim == b.dim);
  std::vector<Vec> rows = a.rows;
  rows.insert(rows.end(), b.rows.begin(), b.rows.end());
  return howell(a.p, a.q, a.dim, rows);
}

bool lattice_subset(const Lattice& a, const Lattice& b) {
  for (const auto& r : a.rows)
    if (!b.member(r)) return false;
  return true;
}

Lattice kernel(u32 p, u32 Q, const Mat& M, const Lattice& L) {
  assert(M.q == L.q && M.cols == L.dim);
  u32 q = M.q;
  assert(Q % q == 0);
  // stack M over the basis of L; row-kernel projected to the M block
  std::vector<Vec> stacked;
  for (std::size_t r = 0; r < M.rows; ++r) stacked.push_back(M.row(r));
  for (const auto& lr : L.rows) stacked.push_back(lr);
  Tracked t = howell_tracked(p, q, M.cols, stacked);
  std::vector<Vec> gens;
  for (const auto& k : t.row_kernel.rows)
    gens.emplace_back(k.begin(), k.begin() + M.rows);
  if (Q != q) {
    // lift mod-q kernel to (Z/Q): preimage of reduction = lifts + q*(Z/Q)^r
    for (std::size_t i = 0; i < M.rows; ++i) {
      Vec row(M.rows, 0);
      row[i] = q % Q;
      gens.push_back(std::move(row));
    }
  }
  return howell(p, Q, M.rows, gens);
}

Solver::Solver(u32 p, const Mat& M, const Lattice& L) : nrows_(M.rows), q_(M.q) {
  assert(M.q == L.q && M.cols == L.dim);
  std::vector<Vec> stacked;
  for (std::size_t r = 0; r < M.rows; ++r) stacked.push_back(M.row(r));
  for (const auto& lr : L.rows) stacked.push_back(lr);
  tracked_ = howell_tracked(p, M.q, M.cols, stacked);
  std::vector<Vec> kgens;
  for (const auto& k : tracked_.row_kernel.rows)
    kgens.emplace_back(k.begin(), k.begin() + M.rows);
  kernel_ = howell(p, M.q, M.rows, kgens);
}

std::optional<Vec> Solver::particular(const Vec& t) const {
  Vec coeffs;
  Vec res = tracked_.lat.residue(t, &coeffs);
  if (!row_zero(res)) return std::nullopt;
  Vec x(nrows_, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i]) continue;
    for (std::size_t j = 0; j < nrows_; ++j)
      x[j] = static_cast<u32>(
          (x[j] + static_cast<u64>(coeffs[i]) * tracked_.trans[i][j]) % q_);
  }
  return x;
}

std::optional<Solution> solve(u32 p, const Mat& M, const Lattice& L, const Vec& t) {
  assert(M.q == L.q && M.cols == L.dim && t.size() == M.cols);
  u32 q = M.q;
  std::vector<Vec> stacked;
  for (std::size_t r = 0; r < M.rows; ++r) stacked.push_back(M.row(r));
  for (const auto& lr : L.rows) stacked.push_back(lr);
  Tracked tr = howell_tracked(p, q, M.cols, stacked);
  Vec coeffs;
  Vec res = tr.lat.residue(t, &coeffs);
  if (!row_zero(res)) return std::nullopt;
  Solution sol;
  sol.particular.assign(M.rows, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i]) continue;
    for (std::size_t j = 0; j < M.rows; ++j)
      sol.particular[j] = static_cast<u32>(
          (sol.particular[j] + static_cast<u64>(coeffs[i]) * tr.trans[i][j]) % q);
  }
  std::vector<Vec> kgens;
  for (const auto& k : tr.row_kernel.rows)
    kgens.emplace_back(k.begin(), k.begin() + M.rows);
  sol.homogeneous = howell(p, q, M.rows, kgens);
  return sol;
}

}  // namespace nil2::zmod
