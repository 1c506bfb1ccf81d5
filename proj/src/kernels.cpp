#include "nil2/kernels.hpp"

#include <cstdlib>

namespace nil2::kern {

#if defined(NIL2_HAVE_AVX2)
const Ops& avx2_ops_impl();
#endif

bool avx2_supported() {
#if defined(NIL2_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Ops& ops() {
  static const Ops* selected = [] {
    const char* force = std::getenv("NIL2_FORCE_SCALAR");
    if (force && force[0] == '1') return &scalar_ops();
#if defined(NIL2_HAVE_AVX2)
    if (avx2_supported()) return &avx2_ops_impl();
#endif
    return &scalar_ops();
  }();
  return *selected;
}

}  // namespace nil2::kern
