#include "kernels_internal.hpp"

#if defined(YOUNGWALK_HAVE_AVX2_TU)

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace yw::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;
// Numerator and denominator products are accumulated separately and folded
// into the running ratio every kFold factors. Factors are bounded by twice the
// diagram width, so kFold = 8 keeps both partial products far from overflow.
constexpr std::size_t kFold = 8;

inline __m256d lane_index(std::size_t base) {
  return _mm256_set_pd(static_cast<double>(base + 3), static_cast<double>(base + 2),
                       static_cast<double>(base + 1), static_cast<double>(base));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// Loads four consecutive values starting at `i`, repeating the last element of
// `v` past its end.
inline __m256d load_clamped(std::span<const double> v, std::size_t i) {
  if (i + kLanes <= v.size()) return _mm256_loadu_pd(v.data() + i);
  alignas(32) std::array<double, kLanes> tmp{};
  for (std::size_t l = 0; l < kLanes; ++l) tmp[l] = v[std::min(i + l, v.size() - 1)];
  return _mm256_load_pd(tmp.data());
}

inline void store_partial(std::span<double> out, std::size_t i, __m256d v) {
  alignas(32) std::array<double, kLanes> tmp{};
  _mm256_store_pd(tmp.data(), v);
  for (std::size_t l = 0; l < kLanes && i + l < out.size(); ++l) out[i + l] = tmp[l];
}

struct Complex4 {
  __m256d re;
  __m256d im;
};

inline Complex4 cdiv_one(Complex4 d) {
  const __m256d n = _mm256_fmadd_pd(d.re, d.re, _mm256_mul_pd(d.im, d.im));
  const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), n);
  return {_mm256_mul_pd(d.re, inv), _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), d.im), inv)};
}

inline Complex4 cmul(Complex4 a, Complex4 b) {
  return {_mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im)),
          _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re))};
}

// Principal square root, choosing the cancellation-free formula per lane.
inline Complex4 csqrt(Complex4 w) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d mod = _mm256_sqrt_pd(_mm256_fmadd_pd(w.re, w.re, _mm256_mul_pd(w.im, w.im)));
  const __m256d abs_im = _mm256_andnot_pd(sign_mask, w.im);
  const __m256d v_sign = _mm256_and_pd(sign_mask, w.im);

  // u >= 0 branch
  const __m256d re_pos = _mm256_sqrt_pd(_mm256_mul_pd(half, _mm256_add_pd(mod, w.re)));
  const __m256d im_pos = _mm256_div_pd(w.im, _mm256_add_pd(re_pos, re_pos));
  // u < 0 branch
  const __m256d t = _mm256_sqrt_pd(_mm256_mul_pd(half, _mm256_sub_pd(mod, w.re)));
  const __m256d re_neg = _mm256_div_pd(abs_im, _mm256_add_pd(t, t));
  const __m256d im_neg = _mm256_or_pd(t, v_sign);

  const __m256d neg = _mm256_cmp_pd(w.re, zero, _CMP_LT_OQ);
  return {_mm256_blendv_pd(re_pos, re_neg, neg), _mm256_blendv_pd(im_pos, im_neg, neg)};
}

}  // namespace

void valley_weights_avx2(std::span<const double> x, std::span<const double> y,
                         std::span<double> out) {
  const std::size_t r = x.size();
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t i0 = 0; i0 < r; i0 += kLanes) {
    const __m256d xi = load_clamped(x, i0);
    const __m256d idx = lane_index(i0);
    __m256d w = one;
    __m256d pn = one;
    __m256d pd = one;
    for (std::size_t j = 0; j + 1 < r; ++j) {
      const __m256d jv = _mm256_set1_pd(static_cast<double>(j));
      const __m256d left = _mm256_cmp_pd(jv, idx, _CMP_LT_OQ);  // j < i
      const __m256d den = _mm256_blendv_pd(_mm256_set1_pd(x[j + 1]), _mm256_set1_pd(x[j]), left);
      pn = _mm256_mul_pd(pn, _mm256_sub_pd(xi, _mm256_set1_pd(y[j])));
      pd = _mm256_mul_pd(pd, _mm256_sub_pd(xi, den));
      if ((j + 1) % kFold == 0) {
        w = _mm256_mul_pd(w, _mm256_div_pd(pn, pd));
        pn = one;
        pd = one;
      }
    }
    w = _mm256_mul_pd(w, _mm256_div_pd(pn, pd));
    store_partial(out, i0, w);
  }
}

void peak_weights_avx2(std::span<const double> x, std::span<const double> y,
                       std::span<double> out) {
  const std::size_t p = y.size();
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t j0 = 0; j0 < p; j0 += kLanes) {
    const __m256d yj = load_clamped(y, j0);
    const __m256d xl = load_clamped(x.first(x.size() - 1), j0);
    const __m256d xr = load_clamped(x.subspan(1), j0);
    const __m256d idx = lane_index(j0);
    __m256d v = _mm256_mul_pd(_mm256_sub_pd(yj, xl), _mm256_sub_pd(xr, yj));
    __m256d pn = one;
    __m256d pd = one;
    for (std::size_t k = 0; k < p; ++k) {
      const __m256d kv = _mm256_set1_pd(static_cast<double>(k));
      const __m256d below = _mm256_cmp_pd(kv, idx, _CMP_LT_OQ);  // k < j
      const __m256d same = _mm256_cmp_pd(kv, idx, _CMP_EQ_OQ);
      const __m256d num_x = _mm256_blendv_pd(_mm256_set1_pd(x[k + 1]), _mm256_set1_pd(x[k]), below);
      const __m256d num = _mm256_blendv_pd(_mm256_sub_pd(yj, num_x), one, same);
      const __m256d den = _mm256_blendv_pd(_mm256_sub_pd(yj, _mm256_set1_pd(y[k])), one, same);
      pn = _mm256_mul_pd(pn, num);
      pd = _mm256_mul_pd(pd, den);
      if ((k + 1) % kFold == 0) {
        v = _mm256_mul_pd(v, _mm256_div_pd(pn, pd));
        pn = one;
        pd = one;
      }
    }
    v = _mm256_mul_pd(v, _mm256_div_pd(pn, pd));
    store_partial(out, j0, v);
  }
}

void power_sums_avx2(std::span<const double> x, std::span<const double> w,
                     std::span<double> out) {
  const std::size_t kmax = out.size();
  // Lane-wise partial sums, kLanes doubles per power.
  std::vector<double> acc(kLanes * kmax, 0.0);
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    __m256d pv = _mm256_loadu_pd(w.data() + i);
    for (std::size_t k = 0; k < kmax; ++k) {
      double* a = acc.data() + kLanes * k;
      _mm256_storeu_pd(a, _mm256_add_pd(_mm256_loadu_pd(a), pv));
      pv = _mm256_mul_pd(pv, xv);
    }
  }
  for (std::size_t k = 0; k < kmax; ++k) out[k] = hsum(_mm256_loadu_pd(acc.data() + kLanes * k));
  for (; i < n; ++i) {
    double pw = w[i];
    for (std::size_t k = 0; k < kmax; ++k) {
      out[k] += pw;
      pw *= x[i];
    }
  }
}

void stieltjes_batch_avx2(const ContinuedFraction& cf, std::span<const double> xs, double eps,
                          std::span<double> re_out, std::span<double> im_out) {
  const std::size_t depth = cf.alpha.size();
  const __m256d epsv = _mm256_set1_pd(eps);
  const bool has_tail = cf.tail_b2 > 0.0;
  const double two_b = has_tail ? 2.0 * std::sqrt(cf.tail_b2) : 0.0;
  for (std::size_t g0 = 0; g0 < xs.size(); g0 += kLanes) {
    const __m256d zr = load_clamped(xs, g0);
    Complex4 t{_mm256_setzero_pd(), _mm256_setzero_pd()};
    if (has_tail) {
      const __m256d u = _mm256_sub_pd(zr, _mm256_set1_pd(cf.tail_a));
      const Complex4 s1 = csqrt({_mm256_sub_pd(u, _mm256_set1_pd(two_b)), epsv});
      const Complex4 s2 = csqrt({_mm256_add_pd(u, _mm256_set1_pd(two_b)), epsv});
      const Complex4 s = cmul(s1, s2);
      const __m256d inv = _mm256_set1_pd(1.0 / (2.0 * cf.tail_b2));
      t = {_mm256_mul_pd(_mm256_sub_pd(u, s.re), inv), _mm256_mul_pd(_mm256_sub_pd(epsv, s.im), inv)};
    }
    for (std::size_t j = depth; j-- > 0;) {
      const __m256d b = _mm256_set1_pd(cf.beta[j + 1]);
      const Complex4 d{_mm256_fnmadd_pd(b, t.re, _mm256_sub_pd(zr, _mm256_set1_pd(cf.alpha[j]))),
                       _mm256_fnmadd_pd(b, t.im, epsv)};
      t = cdiv_one(d);
    }
    const __m256d b0 = _mm256_set1_pd(cf.beta[0]);
    store_partial(re_out, g0, _mm256_mul_pd(t.re, b0));
    store_partial(im_out, g0, _mm256_mul_pd(t.im, b0));
  }
}

}  // namespace yw::simd::detail

#endif  // YOUNGWALK_HAVE_AVX2_TU
