#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nil2/kernels.hpp"

using namespace nil2;

namespace {

std::vector<uint32_t> random_column(std::mt19937& rng, std::size_t n, uint32_t q) {
  std::uniform_int_distribution<uint32_t> d(0, q - 1);
  std::vector<uint32_t> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("dispatched kernels agree with the scalar reference") {
  std::mt19937 rng(20240811);
  const auto& ref = kern::scalar_ops();
  const auto& fast = kern::ops();
  INFO("dispatched variant: ", fast.name);

  for (uint32_t q : {2u, 3u, 4u, 9u, 27u, 243u, 729u, 2048u, 3125u, 65536u}) {
    for (std::size_t n : {0ul, 1ul, 7ul, 8ul, 9ul, 64ul, 1000ul}) {
      auto src = random_column(rng, n, q);
      auto mul = random_column(rng, n, q);
      std::uniform_int_distribution<uint32_t> d(0, q - 1);
      uint32_t f = d(rng), c = d(rng), s = d(rng);

      std::vector<uint32_t> a(n), b(n);
      ref.add_const(a.data(), src.data(), n, c, q);
      fast.add_const(b.data(), src.data(), n, c, q);
      CHECK(a == b);

      ref.muladd_const(a.data(), src.data(), mul.data(), n, f, c, q);
      fast.muladd_const(b.data(), src.data(), mul.data(), n, f, c, q);
      CHECK(a == b);

      ref.mul_pair(a.data(), src.data(), mul.data(), n, q);
      fast.mul_pair(b.data(), src.data(), mul.data(), n, q);
      CHECK(a == b);

      ref.scale_muladd(a.data(), src.data(), s, mul.data(), f, n, q);
      fast.scale_muladd(b.data(), src.data(), s, mul.data(), f, n, q);
      CHECK(a == b);
    }
  }
}

TEST_CASE("scalar kernels compute the stated formulas") {
  std::vector<uint32_t> src{0, 1, 2, 8, 7}, mul{1, 2, 0, 8, 3}, out(5);
  const auto& k = kern::scalar_ops();
  k.add_const(out.data(), src.data(), 5, 4, 9);
  CHECK(out == std::vector<uint32_t>{4, 5, 6, 3, 2});
  k.muladd_const(out.data(), src.data(), mul.data(), 5, 5, 1, 9);
  // src + 5*mul + 1 mod 9
  CHECK(out == std::vector<uint32_t>{6, 3, 3, 4, 5});
  k.mul_pair(out.data(), src.data(), mul.data(), 5, 9);
  CHECK(out == std::vector<uint32_t>{0, 2, 0, 1, 3});
  k.scale_muladd(out.data(), src.data(), 2, mul.data(), 3, 5, 9);
  CHECK(out == std::vector<uint32_t>{3, 8, 4, 4, 5});
}
