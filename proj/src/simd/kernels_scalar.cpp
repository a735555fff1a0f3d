#include <cmath>
#include <complex>
#include <cstddef>

#include "kernels_internal.hpp"

namespace yw::simd::detail {

void valley_weights_scalar(std::span<const double> x, std::span<const double> y,
                           std::span<double> out) {
  const std::size_t r = x.size();
  for (std::size_t i = 0; i < r; ++i) {
    // Pair each peak with the valley on the far side from x_i so that every
    // factor lies in (0, 1) and the running product never overflows.
    double w = 1.0;
    for (std::size_t j = 0; j + 1 < r; ++j) {
      const double den = j < i ? x[j] : x[j + 1];
      w *= (x[i] - y[j]) / (x[i] - den);
    }
    out[i] = w;
  }
}

void peak_weights_scalar(std::span<const double> x, std::span<const double> y,
                         std::span<double> out) {
  const std::size_t p = y.size();
  for (std::size_t j = 0; j < p; ++j) {
    double v = (y[j] - x[j]) * (x[j + 1] - y[j]);
    for (std::size_t k = 0; k < p; ++k) {
      if (k == j) continue;
      const double num = k < j ? x[k] : x[k + 1];
      v *= (y[j] - num) / (y[j] - y[k]);
    }
    out[j] = v;
  }
}

void power_sums_scalar(std::span<const double> x, std::span<const double> w,
                       std::span<double> out) {
  for (auto& o : out) o = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = w[i];
    for (auto& o : out) {
      o += p;
      p *= x[i];
    }
  }
}

namespace {

std::complex<double> semicircle_tail(std::complex<double> z, double a, double b2) {
  // Product of principal roots keeps the branch with t(z) ~ 1/z at infinity.
  const double two_b = 2.0 * std::sqrt(b2);
  const std::complex<double> s = std::sqrt(z - a - two_b) * std::sqrt(z - a + two_b);
  return (z - a - s) / (2.0 * b2);
}

}  // namespace

void stieltjes_batch_scalar(const ContinuedFraction& cf, std::span<const double> xs, double eps,
                            std::span<double> re_out, std::span<double> im_out) {
  const std::size_t depth = cf.alpha.size();
  for (std::size_t g = 0; g < xs.size(); ++g) {
    const std::complex<double> z(xs[g], eps);
    std::complex<double> t = cf.tail_b2 > 0.0 ? semicircle_tail(z, cf.tail_a, cf.tail_b2)
                                              : std::complex<double>(0.0, 0.0);
    for (std::size_t j = depth; j-- > 0;) {
      t = 1.0 / (z - cf.alpha[j] - cf.beta[j + 1] * t);
    }
    t *= cf.beta[0];
    re_out[g] = t.real();
    im_out[g] = t.imag();
  }
}

}  // namespace yw::simd::detail
