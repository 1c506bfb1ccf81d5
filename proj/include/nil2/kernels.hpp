#pragma once

#include <cstddef>
#include <cstdint>

// Batch modular arithmetic over uint32 coordinate columns.
//
// These are the inner loops of the enumeration oracles: element blocks are
// stored column-major (one array per coordinate), so multiplying a whole
// frontier by a fixed group element, or walking a lattice box, turns into a
// handful of flat array passes.  All inputs must already be reduced mod q.
//
// The AVX2 variants use the float-reciprocal reduction trick and are exact
// for q <= 2048 (intermediates stay below 2^24); for larger moduli they
// delegate to the scalar path.  Variant selection happens once at startup;
// set NIL2_FORCE_SCALAR=1 to pin the reference kernels.

namespace nil2::kern {

struct Ops {
  const char* name;
  // dst[i] = (src[i] + c) % q
  void (*add_const)(uint32_t* dst, const uint32_t* src, std::size_t n,
                    uint32_t c, uint32_t q);
  // dst[i] = (src[i] + mul[i]*f + c) % q
  void (*muladd_const)(uint32_t* dst, const uint32_t* src, const uint32_t* mul,
                       std::size_t n, uint32_t f, uint32_t c, uint32_t q);
  // dst[i] = (x[i]*y[i]) % q
  void (*mul_pair)(uint32_t* dst, const uint32_t* x, const uint32_t* y,
                   std::size_t n, uint32_t q);
  // dst[i] = (src[i]*s + t[i]*f) % q
  void (*scale_muladd)(uint32_t* dst, const uint32_t* src, uint32_t s,
                       const uint32_t* t, uint32_t f, std::size_t n,
                       uint32_t q);
};

const Ops& scalar_ops();
bool avx2_supported();

// Runtime-selected kernel set (AVX2 when the CPU has it, else scalar).
const Ops& ops();

}  // namespace nil2::kern
