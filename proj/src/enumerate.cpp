#include "nil2/enumerate.hpp"

#include <unordered_set>

#include "nil2/kernels.hpp"

namespace nil2 {

EltBlock EltBlock::from(const FreeCtx& f, const std::vector<Elt>& elts) {
  EltBlock b;
  b.n = elts.size();
  b.acol.assign(f.k, std::vector<u32>(b.n));
  b.ccol.assign(f.pairs(), std::vector<u32>(b.n));
  for (std::size_t e = 0; e < b.n; ++e) {
    for (std::size_t i = 0; i < f.k; ++i) b.acol[i][e] = elts[e].a[i];
    for (std::size_t t = 0; t < f.pairs(); ++t) b.ccol[t][e] = elts[e].c[t];
  }
  return b;
}

Elt EltBlock::get(const FreeCtx& f, std::size_t i) const {
  Elt e = f.identity();
  for (std::size_t j = 0; j < f.k; ++j) e.a[j] = acol[j][i];
  for (std::size_t t = 0; t < f.pairs(); ++t) e.c[t] = ccol[t][i];
  return e;
}

namespace {

// a-columns folded into [0, q_comm); one conditional subtract suffices since
// q_gen is either q_comm or 2*q_comm
std::vector<std::vector<u32>> a_mod_comm(const FreeCtx& f, const EltBlock& src) {
  const auto& k = kern::ops();
  if (f.v.q_gen == f.v.q_comm) return src.acol;
  std::vector<std::vector<u32>> out(src.acol.size(), std::vector<u32>(src.n));
  for (std::size_t i = 0; i < src.acol.size(); ++i)
    k.add_const(out[i].data(), src.acol[i].data(), src.n, 0, f.v.q_comm);
  return out;
}

}  // namespace

EltBlock batch_mul_free(const FreeCtx& f, const EltBlock& src, const FreeElement& g) {
  const auto& k = kern::ops();
  EltBlock dst;
  dst.n = src.n;
  dst.acol.assign(f.k, std::vector<u32>(src.n));
  dst.ccol.assign(f.pairs(), std::vector<u32>(src.n));
  for (std::size_t i = 0; i < f.k; ++i)
    k.add_const(dst.acol[i].data(), src.acol[i].data(), src.n, g.a[i], f.v.q_gen);
  auto amod = a_mod_comm(f, src);
  for (std::size_t j = 1; j < f.k; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      std::size_t t = pair_index(j, i);
      // c_t += kappa(u.a, g.a)_t = u.a[j] * g.a[i], plus g's own c_t
      k.muladd_const(dst.ccol[t].data(), src.ccol[t].data(), amod[j].data(),
                     src.n, g.a[i] % f.v.q_comm, g.c[t], f.v.q_comm);
    }
  return dst;
}

EltBlock batch_pow_free(const FreeCtx& f, const EltBlock& src, int64_t m) {
  const auto& k = kern::ops();
  const Variety& v = f.v;
  u32 ma = static_cast<u32>(((m % v.q_gen) + v.q_gen) % v.q_gen);
  u32 mc = static_cast<u32>(((m % v.q_comm) + v.q_comm) % v.q_comm);
  u32 b2 = binom2_mod(m, v.q_comm);
  EltBlock dst;
  dst.n = src.n;
  dst.acol.assign(f.k, std::vector<u32>(src.n));
  dst.ccol.assign(f.pairs(), std::vector<u32>(src.n));
  std::vector<u32> zero(src.n, 0);
  for (std::size_t i = 0; i < f.k; ++i)
    k.scale_muladd(dst.acol[i].data(), src.acol[i].data(), ma, zero.data(), 0,
                   src.n, v.q_gen);
  auto amod = a_mod_comm(f, src);
  std::vector<u32> kap(src.n);
  for (std::size_t j = 1; j < f.k; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      std::size_t t = pair_index(j, i);
      k.mul_pair(kap.data(), amod[j].data(), amod[i].data(), src.n, v.q_comm);
      k.scale_muladd(dst.ccol[t].data(), src.ccol[t].data(), mc, kap.data(), b2,
                     src.n, v.q_comm);
    }
  return dst;
}

std::vector<Elt> closure_enumerate(const FpGroup& G, const std::vector<Elt>& gens,
                                   u64 cap) {
  std::unordered_set<Elt, EltHash> seen;
  std::vector<Elt> all;
  std::vector<Elt> frontier{G.identity()};
  seen.insert(G.identity());
  all.push_back(G.identity());
  std::vector<Elt> rgens;
  for (const auto& g : gens) rgens.push_back(G.reduce(g));
  while (!frontier.empty()) {
    EltBlock block = EltBlock::from(G.f, frontier);
    std::vector<Elt> next;
    for (const auto& g : rgens) {
      EltBlock prod = batch_mul_free(G.f, block, g);
      for (std::size_t i = 0; i < prod.n; ++i) {
        Elt e = G.reduce(prod.get(G.f, i));
        if (seen.insert(e).second) {
          if (seen.size() > cap) throw cap_exceeded("closure enumeration cap exceeded");
          next.push_back(e);
          all.push_back(e);
        }
      }
    }
    frontier = std::move(next);
  }
  return all;
}

u64 closure_count(const FpGroup& G, const std::vector<Elt>& gens, u64 cap) {
  return closure_enumerate(G, gens, cap).size();
}

}  // namespace nil2
