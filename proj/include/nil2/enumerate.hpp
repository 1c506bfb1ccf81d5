#pragma once

#include <vector>

#include "nil2/fp_group.hpp"

// Brute-force closure oracles.  These are the independent counterpart of the
// structured lattice computations: they enumerate generated subgroups by
// plain BFS over products, with the free-coordinate arithmetic done in
// column-major blocks through the batch kernels.

namespace nil2 {

struct EltBlock {
  std::size_t n = 0;
  std::vector<std::vector<u32>> acol;  // one column per generator coordinate
  std::vector<std::vector<u32>> ccol;  // one column per commutator coordinate

  static EltBlock from(const FreeCtx& f, const std::vector<Elt>& elts);
  Elt get(const FreeCtx& f, std::size_t i) const;
};

// right-multiply every element of the block by g (free coordinates)
EltBlock batch_mul_free(const FreeCtx& f, const EltBlock& src, const FreeElement& g);
// m-th power of every element of the block (free coordinates)
EltBlock batch_pow_free(const FreeCtx& f, const EltBlock& src, int64_t m);

// BFS closure of <gens> inside G; throws cap_exceeded beyond cap elements
std::vector<Elt> closure_enumerate(const FpGroup& G, const std::vector<Elt>& gens,
                                   u64 cap);
u64 closure_count(const FpGroup& G, const std::vector<Elt>& gens, u64 cap);

}  // namespace nil2
