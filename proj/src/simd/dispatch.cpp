#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"
#include "youngwalk/error.hpp"
#include "youngwalk/simd.hpp"

namespace yw::simd {

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &detail::valley_weights_scalar,
                                 &detail::peak_weights_scalar, &detail::power_sums_scalar,
                                 &detail::stieltjes_batch_scalar};
  return table;
}

bool avx2_available() {
#if defined(YOUNGWALK_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const KernelTable& avx2_kernels() {
#if defined(YOUNGWALK_HAVE_AVX2_TU)
  if (!avx2_available()) throw Error("AVX2 kernels requested on a CPU without AVX2/FMA");
  static const KernelTable table{"avx2", &detail::valley_weights_avx2, &detail::peak_weights_avx2,
                                 &detail::power_sums_avx2, &detail::stieltjes_batch_avx2};
  return table;
#else
  throw Error("AVX2 kernels were not compiled into this build");
#endif
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("YOUNGWALK_SIMD");
  const std::string_view choice = env ? env : "";
  if (choice == "scalar") return scalar_kernels();
  if (choice == "avx2") return avx2_kernels();
  return avx2_available() ? avx2_kernels() : scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace yw::simd
