#include "nil2/core.hpp"

namespace nil2 {

Variety Variety::make(u32 p, u32 n) {
  if (p < 2 || n < 1) throw std::invalid_argument("variety: need p >= 2, n >= 1");
  Variety v;
  v.p = p;
  v.n = n;
  u64 q = 1;
  for (u32 i = 0; i < n; ++i) {
    q *= p;
    if (q > (1u << 30)) throw std::invalid_argument("variety: exponent too large");
  }
  v.q_gen = static_cast<u32>(q);
  // in exponent-2^n groups the commutator coordinates live mod 2^(n-1):
  // (xy)^m = x^m y^m [y,x]^(m(m-1)/2) forces [y,x]^(m/2) = e for even m
  v.q_comm = (p == 2) ? v.q_gen / 2 : v.q_gen;
  if (v.q_comm == 0) v.q_comm = 1;
  return v;
}

u32 binom2_mod(int64_t m, u32 q) {
  __int128 prod = static_cast<__int128>(m) * (m - 1) / 2;
  __int128 r = prod % q;
  if (r < 0) r += q;
  return static_cast<u32>(r);
}

FreeElement FreeCtx::gen(std::size_t i) const {
  if (i >= k) throw std::out_of_range("generator index");
  FreeElement e = identity();
  e.a[i] = 1 % v.q_gen;
  return e;
}

Vec FreeCtx::kappa(const Vec& ua, const Vec& va) const {
  Vec c(pairs(), 0);
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i)
      c[pair_index(j, i)] =
          static_cast<u32>((static_cast<u64>(ua[j]) * va[i]) % v.q_comm);
  return c;
}

Vec FreeCtx::bracket_c(const Vec& ua, const Vec& va) const {
  Vec c(pairs(), 0);
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      u64 pos = (static_cast<u64>(ua[j]) * va[i]) % v.q_comm;
      u64 neg = (static_cast<u64>(va[j]) * ua[i]) % v.q_comm;
      c[pair_index(j, i)] = static_cast<u32>((pos + v.q_comm - neg) % v.q_comm);
    }
  return c;
}

FreeElement FreeCtx::mul(const FreeElement& x, const FreeElement& y) const {
  FreeElement r = identity();
  for (std::size_t i = 0; i < k; ++i) r.a[i] = (x.a[i] + y.a[i]) % v.q_gen;
  Vec kap = kappa(x.a, y.a);
  for (std::size_t t = 0; t < pairs(); ++t)
    r.c[t] = static_cast<u32>((static_cast<u64>(x.c[t]) + y.c[t] + kap[t]) % v.q_comm);
  return r;
}

FreeElement FreeCtx::pow(const FreeElement& x, int64_t m) const {
  FreeElement r = identity();
  u32 ma = static_cast<u32>(((m % v.q_gen) + v.q_gen) % v.q_gen);
  u32 mc = static_cast<u32>(((m % v.q_comm) + v.q_comm) % v.q_comm);
  u32 b2 = binom2_mod(m, v.q_comm);
  for (std::size_t i = 0; i < k; ++i)
    r.a[i] = static_cast<u32>((static_cast<u64>(x.a[i]) * ma) % v.q_gen);
  Vec kap = kappa(x.a, x.a);
  for (std::size_t t = 0; t < pairs(); ++t)
    r.c[t] = static_cast<u32>((static_cast<u64>(x.c[t]) * mc +
                               static_cast<u64>(kap[t]) * b2) %
                              v.q_comm);
  return r;
}

FreeElement FreeCtx::comm(const FreeElement& x, const FreeElement& y) const {
  FreeElement r = identity();
  r.c = bracket_c(x.a, y.a);
  return r;
}

bool FreeCtx::is_identity(const FreeElement& x) const {
  for (u32 t : x.a)
    if (t) return false;
  for (u32 t : x.c)
    if (t) return false;
  return true;
}

u32 FreeCtx::order_exp() const {
  u32 eg = zmod::valuation(v.p, v.q_gen, 0);
  u32 ec = zmod::valuation(v.p, v.q_comm, 0);
  return static_cast<u32>(k * eg + pairs() * ec);
}

}  // namespace nil2
