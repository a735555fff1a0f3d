#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and an
// AVX2 version; `active()` picks one at startup (CPU feature probe, overridable
// through the YOUNGWALK_SIMD environment variable: "scalar" or "avx2").

#include <cstddef>
#include <span>
#include <string_view>

namespace yw::simd {

// Continued-fraction description of a Stieltjes transform
//   G(z) = beta[0] / (z - alpha[0] - beta[1] / (z - alpha[1] - ... beta[L] * tail(z)))
// with L = alpha.size() and beta.size() == L + 1. When `tail_b2 > 0` the tail
// is the Stieltjes transform of a semicircle centred at `tail_a` with variance
// `tail_b2`; otherwise the fraction terminates (finitely supported measure).
struct ContinuedFraction {
  std::span<const double> alpha;
  std::span<const double> beta;
  double tail_a = 0.0;
  double tail_b2 = 0.0;
};

struct KernelTable {
  std::string_view name;

  // Transition-measure weights at the valleys of an interlacing sequence
  // x_0 < y_0 < x_1 < ... < y_{r-2} < x_{r-1}:
  //   out[i] = prod_j (x_i - y_j) / prod_{k != i} (x_i - x_k).
  void (*valley_weights)(std::span<const double> valleys, std::span<const double> peaks,
                         std::span<double> out);

  // Co-transition weights at the peaks:
  //   out[j] = -prod_i (y_j - x_i) / prod_{k != j} (y_j - y_k).
  // For a Young diagram of size n these sum to n.
  void (*peak_weights)(std::span<const double> valleys, std::span<const double> peaks,
                       std::span<double> out);

  // out[k] = sum_i w[i] * x[i]^k for k = 0 .. out.size()-1.
  void (*power_sums)(std::span<const double> x, std::span<const double> w, std::span<double> out);

  // Evaluates G(x_i + i*eps) for every grid point.
  void (*stieltjes_batch)(const ContinuedFraction& cf, std::span<const double> x, double eps,
                          std::span<double> re_out, std::span<double> im_out);
};

const KernelTable& scalar_kernels();

// True when the AVX2 translation unit was built and the CPU supports AVX2+FMA.
bool avx2_available();

// Requires avx2_available().
const KernelTable& avx2_kernels();

// The table selected for this process.
const KernelTable& active();

}  // namespace yw::simd
