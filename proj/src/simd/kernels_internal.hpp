#pragma once

#include <span>

#include "youngwalk/simd.hpp"

namespace yw::simd::detail {

void valley_weights_scalar(std::span<const double> x, std::span<const double> y,
                           std::span<double> out);
void peak_weights_scalar(std::span<const double> x, std::span<const double> y,
                         std::span<double> out);
void power_sums_scalar(std::span<const double> x, std::span<const double> w,
                       std::span<double> out);
void stieltjes_batch_scalar(const ContinuedFraction& cf, std::span<const double> xs, double eps,
                            std::span<double> re_out, std::span<double> im_out);

#if defined(YOUNGWALK_HAVE_AVX2_TU)
void valley_weights_avx2(std::span<const double> x, std::span<const double> y,
                         std::span<double> out);
void peak_weights_avx2(std::span<const double> x, std::span<const double> y,
                       std::span<double> out);
void power_sums_avx2(std::span<const double> x, std::span<const double> w,
                     std::span<double> out);
void stieltjes_batch_avx2(const ContinuedFraction& cf, std::span<const double> xs, double eps,
                          std::span<double> re_out, std::span<double> im_out);
#endif

}  // namespace yw::simd::detail
