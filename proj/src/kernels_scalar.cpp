#include "nil2/kernels.hpp"

namespace nil2::kern {

namespace {

void s_add_const(uint32_t* dst, const uint32_t* src, std::size_t n, uint32_t c,
                 uint32_t q) {
  c %= q;
  for (std::size_t i = 0; i < n; ++i) {
    uint32_t v = src[i] + c;
    dst[i] = v >= q ? v - q : v;
  }
}

void s_muladd_const(uint32_t* dst, const uint32_t* src, const uint32_t* mul,
                    std::size_t n, uint32_t f, uint32_t c, uint32_t q) {
  f %= q;
  c %= q;
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = static_cast<uint32_t>(
        (static_cast<uint64_t>(mul[i]) * f + src[i] + c) % q);
}

void s_mul_pair(uint32_t* dst, const uint32_t* x, const uint32_t* y,
                std::size_t n, uint32_t q) {
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = static_cast<uint32_t>((static_cast<uint64_t>(x[i]) * y[i]) % q);
}

void s_scale_muladd(uint32_t* dst, const uint32_t* src, uint32_t s,
                    const uint32_t* t, uint32_t f, std::size_t n, uint32_t q) {
  s %= q;
  f %= q;
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = static_cast<uint32_t>((static_cast<uint64_t>(src[i]) * s +
                                    static_cast<uint64_t>(t[i]) * f) %
                                   q);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", s_add_const, s_muladd_const, s_mul_pair,
                       s_scale_muladd};
  return ops;
}

}  // namespace nil2::kern
