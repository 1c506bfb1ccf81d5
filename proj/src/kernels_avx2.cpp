#include "nil2/kernels.hpp"

#if defined(NIL2_HAVE_AVX2)

#include <immintrin.h>

namespace nil2::kern {

namespace {

// Exactness bound for the float-reciprocal reduction: every intermediate must
// stay below 2^24.  The largest one is 2*(q-1)^2 (scale_muladd), so q <= 2048.
constexpr uint32_t kMaxQ = 2048;

// x mod q for 0 <= x < 2^24, eight lanes at a time.
inline __m256i mod_small(__m256i x, __m256 qf, __m256 inv_qf, __m256i qi) {
  __m256 xf = _mm256_cvtepi32_ps(x);
  __m256 tf = _mm256_floor_ps(_mm256_mul_ps(xf, inv_qf));
  __m256i r = _mm256_sub_epi32(x, _mm256_cvtps_epi32(_mm256_mul_ps(tf, qf)));
  // the float quotient can be off by one in either direction
  __m256i too_big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(qi, _mm256_set1_epi32(1)));
  r = _mm256_sub_epi32(r, _mm256_and_si256(too_big, qi));
  __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, qi));
  return r;
}

void a_add_const(uint32_t* dst, const uint32_t* src, std::size_t n, uint32_t c,
                 uint32_t q) {
  if (q > kMaxQ) {
    scalar_ops().add_const(dst, src, n, c, q);
    return;
  }
  c %= q;
  const __m256i qi = _mm256_set1_epi32(static_cast<int>(q));
  const __m256i ci = _mm256_set1_epi32(static_cast<int>(c));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    v = _mm256_add_epi32(v, ci);
    __m256i ge = _mm256_cmpgt_epi32(v, _mm256_sub_epi32(qi, _mm256_set1_epi32(1)));
    v = _mm256_sub_epi32(v, _mm256_and_si256(ge, qi));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), v);
  }
  for (; i < n; ++i) {
    uint32_t v = src[i] + c;
    dst[i] = v >= q ? v - q : v;
  }
}

void a_muladd_const(uint32_t* dst, const uint32_t* src, const uint32_t* mul,
                    std::size_t n, uint32_t f, uint32_t c, uint32_t q) {
  if (q > kMaxQ) {
    scalar_ops().muladd_const(dst, src, mul, n, f, c, q);
    return;
  }
  f %= q;
  c %= q;
  const __m256 qf = _mm256_set1_ps(static_cast<float>(q));
  const __m256 inv_qf = _mm256_set1_ps(1.0f / static_cast<float>(q));
  const __m256i qi = _mm256_set1_epi32(static_cast<int>(q));
  const __m256i fi = _mm256_set1_epi32(static_cast<int>(f));
  const __m256i ci = _mm256_set1_epi32(static_cast<int>(c));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mul + i));
    __m256i x = _mm256_add_epi32(_mm256_add_epi32(_mm256_mullo_epi32(m, fi), s), ci);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        mod_small(x, qf, inv_qf, qi));
  }
  for (; i < n; ++i)
    dst[i] = static_cast<uint32_t>(
        (static_cast<uint64_t>(mul[i]) * f + src[i] + c) % q);
}

void a_mul_pair(uint32_t* dst, const uint32_t* x, const uint32_t* y,
                std::size_t n, uint32_t q) {
  if (q > kMaxQ) {
    scalar_ops().mul_pair(dst, x, y, n, q);
    return;
  }
  const __m256 qf = _mm256_set1_ps(static_cast<float>(q));
  const __m256 inv_qf = _mm256_set1_ps(1.0f / static_cast<float>(q));
  const __m256i qi = _mm256_set1_epi32(static_cast<int>(q));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        mod_small(_mm256_mullo_epi32(a, b), qf, inv_qf, qi));
  }
  for (; i < n; ++i)
    dst[i] = static_cast<uint32_t>((static_cast<uint64_t>(x[i]) * y[i]) % q);
}

void a_scale_muladd(uint32_t* dst, const uint32_t* src, uint32_t s,
                    const uint32_t* t, uint32_t f, std::size_t n, uint32_t q) {
  if (q > kMaxQ) {
    scalar_ops().scale_muladd(dst, src, s, t, f, n, q);
    return;
  }
  s %= q;
  f %= q;
  const __m256 qf = _mm256_set1_ps(static_cast<float>(q));
  const __m256 inv_qf = _mm256_set1_ps(1.0f / static_cast<float>(q));
  const __m256i qi = _mm256_set1_epi32(static_cast<int>(q));
  const __m256i si = _mm256_set1_epi32(static_cast<int>(s));
  const __m256i fi = _mm256_set1_epi32(static_cast<int>(f));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + i));
    __m256i x = _mm256_add_epi32(_mm256_mullo_epi32(a, si), _mm256_mullo_epi32(b, fi));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        mod_small(x, qf, inv_qf, qi));
  }
  for (; i < n; ++i)
    dst[i] = static_cast<uint32_t>((static_cast<uint64_t>(src[i]) * s +
                                    static_cast<uint64_t>(t[i]) * f) %
                                   q);
}

}  // namespace

const Ops& avx2_ops_impl() {
  static const Ops ops{"avx2", a_add_const, a_muladd_const, a_mul_pair,
                       a_scale_muladd};
  return ops;
}

}  // namespace nil2::kern

#endif  // NIL2_HAVE_AVX2
