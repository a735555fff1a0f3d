#include "youngwalk/freeprob.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "free_series.hpp"
#include "youngwalk/error.hpp"

namespace yw {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_100;
using cplx = std::complex<double>;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

double vk_ls(double x) {
  if (std::abs(x) >= 2.0) return std::abs(x);
  return 2.0 / std::numbers::pi * (x * std::asin(0.5 * x) + std::sqrt(4.0 - x * x));
}

ContinuousDiagram vk_ls_diagram(int cells) {
  if (cells < 2 || cells % 2) throw ConfigError("vk_ls_diagram needs an even cell count >= 2");
  std::vector<double> x(static_cast<std::size_t>(cells) + 1), w(x.size());
  for (int i = 0; i <= cells; ++i) {
    const auto u = static_cast<std::size_t>(i);
    x[u] = -2.0 * std::cos(std::numbers::pi * i / cells);
    if (2 * i == cells) x[u] = 0.0;
    w[u] = vk_ls(x[u]);
  }
  x.front() = -2.0;
  x.back() = 2.0;
  w.front() = w.back() = 2.0;
  return ContinuousDiagram(std::move(x), std::move(w));
}

CumulantSeq free_convolve(const CumulantSeq& a, const CumulantSeq& b) {
  CumulantSeq out;
  const int K = std::max(a.order(), b.order());
  out.values.resize(static_cast<std::size_t>(K));
  for (int j = 1; j <= K; ++j) out.values[static_cast<std::size_t>(j - 1)] = a.at(j) + b.at(j);
  return out;
}

CumulantSeq free_compress(const CumulantSeq& R, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw ConfigError("free compression needs 0 < c <= 1, got " + fmt("%g", c));
  CumulantSeq out = R;
  double p = 1.0;
  for (auto& r : out.values) {
    r *= p;
    p *= c;
  }
  return out;
}

CumulantSeq omega_t_cumulants(const CumulantSeq& R0, double t, double m) {
  if (t < 0.0 || !(m > 0.0)) throw ConfigError("omega_t_cumulants needs t >= 0 and m > 0");
  CumulantSeq out{std::vector<double>(static_cast<std::size_t>(std::max(R0.order(), 2)), 0.0), R0.growth_bound};
  out.values[1] = 1.0;
  for (int j = 3; j <= R0.order(); ++j)
    out.values[static_cast<std::size_t>(j - 1)] = R0.at(j) * std::exp(-(j - 1) * t / m);
  return out;
}

CumulantSeq omega_t_composition(const CumulantSeq& R0, double t, double m) {
  if (t < 0.0 || !(m > 0.0)) throw ConfigError("omega_t_composition needs t >= 0 and m > 0");
  const double c = std::exp(-t / m);
  const int K = std::max(R0.order(), 2);
  if (c >= 1.0) return R0;
  return free_convolve(free_compress(R0, c), free_compress(semicircle_cumulants(K), 1.0 - c));
}

simd::ContinuedFraction JacobiCoefficients::fraction() const {
  simd::ContinuedFraction cf{a, b2};
  if (!finite) {
    cf.tail_a = a.back();
    cf.tail_b2 = b2.back();
  }
  return cf;
}

namespace {

// Chebyshev's modified-moment recursion on plain monomials.
template <class T>
JacobiCoefficients chebyshev(const std::vector<T>& M) {
  using std::abs;
  const int L = (static_cast<int>(M.size()) - 1) / 2;
  if (L < 1) throw ConfigError("need moments up to at least M_2");
  if (!(M[0] > T(0))) throw NumericError("invalid moment sequence: M_0 <= 0");
  const auto at = [](std::vector<T>& v, int i) -> T& { return v[static_cast<std::size_t>(i)]; };
  std::vector<T> prev(M.size(), T(0)), cur = M, next(M.size(), T(0));
  std::vector<T> a{M[1] / M[0]}, b{M[0]};
  JacobiCoefficients J;
  T scale = M[2] / M[0] - a[0] * a[0];
  for (int k = 1; k <= L; ++k) {
    for (int l = k; l <= 2 * L - k; ++l)
      at(next, l) = at(cur, l + 1) - a.back() * at(cur, l) - b.back() * at(prev, l);
    const T bk = at(next, k) / at(cur, k - 1);
    if (k == 1) scale = abs(bk);
    const T tol = T(1e-10) * (scale > T(1) ? scale : T(1));
    if (bk < -tol) throw NumericError("invalid moment sequence: recurrence coefficient b_" + std::to_string(k) + "^2 = " + fmt("%.3g", static_cast<double>(bk)) + " < 0");
    if (bk <= tol) {
      b.push_back(T(0));
      J.finite = true;
      break;
    }
    b.push_back(bk);
    if (k < L) a.push_back(at(next, k + 1) / at(next, k) - at(cur, k) / at(cur, k - 1));
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  for (const auto& v : a) J.a.push_back(static_cast<double>(v));
  for (const auto& v : b) J.b2.push_back(static_cast<double>(v));
  return J;
}

}  // namespace

JacobiCoefficients jacobi_coefficients(const MomentSeq& M) {
  std::vector<long double> m(M.values.begin(), M.values.end());
  return chebyshev(m);
}

JacobiCoefficients jacobi_coefficients(const CumulantSeq& R, int moment_order) {
  return evolved_jacobi_coefficients(R, 0.0, 1.0, moment_order);
}

JacobiCoefficients evolved_jacobi_coefficients(const CumulantSeq& R0, double t, double m, int moment_order) {
  if (moment_order < 2) throw ConfigError("moment order must be >= 2");
  if (t < 0.0 || !(m > 0.0)) throw ConfigError("evolution needs t >= 0 and m > 0");
  // The decay factors are formed in wide precision too: rounding them to
  // double would add noise that is not smooth in t.
  const Wide decay = boost::multiprecision::exp(Wide(-t) / Wide(m));
  std::vector<Wide> r(static_cast<std::size_t>(std::max(R0.order(), 2)) + 1, Wide(0));
  for (int j = 1; j <= R0.order(); ++j) r[static_cast<std::size_t>(j)] = Wide(R0.at(j));
  if (t > 0.0) {
    r[1] = 0;
    r[2] = 1;
    Wide f = decay * decay;
    for (std::size_t j = 3; j < r.size(); ++j, f *= decay) r[j] *= f;
  }
  return chebyshev(detail::moments_from_cumulants(r, moment_order));
}

namespace {

cplx semicircle_tail(cplx z, double a, double b2) {
  const double two_b = 2.0 * std::sqrt(b2);
  const cplx s = std::sqrt(z - a - two_b) * std::sqrt(z - a + two_b);
  return (z - a - s) / (2.0 * b2);
}

}  // namespace

cplx stieltjes(const JacobiCoefficients& J, cplx z) {
  const auto cf = J.fraction();
  cplx t = cf.tail_b2 > 0.0 ? semicircle_tail(z, cf.tail_a, cf.tail_b2) : cplx(0.0);
  for (std::size_t j = cf.alpha.size(); j-- > 0;) t = 1.0 / (z - cf.alpha[j] - cf.beta[j + 1] * t);
  return cf.beta[0] * t;
}

cplx evolved_stieltjes(const AtomicMeasure& mu0, double c, cplx z) {
  if (!(c > 0.0 && c <= 1.0)) throw ConfigError("evolved_stieltjes needs 0 < c <= 1");
  if (!(z.imag() > 0.0)) throw ConfigError("evolved_stieltjes needs Im z > 0");
  auto g0 = [&](cplx zeta, cplx& d) {
    cplx g = 0.0;
    d = 0.0;
    for (const auto& a : mu0.atoms()) {
      const cplx r = 1.0 / (zeta - a.location);
      g += a.weight * r;
      d -= a.weight * r * r;
    }
    return g;
  };
  // Follow the root from c = 1, where zeta = z, down to the requested c.
  cplx zeta = z;
  const int stages = 64;
  for (int s = 1; s <= stages; ++s) {
    const double cs = 1.0 + (c - 1.0) * s / stages;
    for (int it = 0; it < 100; ++it) {
      cplx d;
      const cplx g = g0(zeta, d);
      const cplx f = zeta + (cs - 1.0) / g + (1.0 - cs) * g / cs - z;
      const cplx fp = 1.0 - (cs - 1.0) * d / (g * g) + (1.0 - cs) * d / cs;
      const cplx step = f / fp;
      zeta -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(zeta))) break;
    }
  }
  cplx d;
  return g0(zeta, d) / c;
}

std::pair<double, double> JacobiCoefficients::support_enclosure() const {
  // Gershgorin discs of the Jacobi operator; the constant tail has spectrum
  // [a - 2b, a + 2b].
  double lo = a[0], hi = a[0];
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double r = (j > 0 ? std::sqrt(b2[j]) : 0.0) + std::sqrt(b2[j + 1]);
    lo = std::min(lo, a[j] - r);
    hi = std::max(hi, a[j] + r);
  }
  if (!finite) {
    lo = std::min(lo, a.back() - 2.0 * std::sqrt(b2.back()));
    hi = std::max(hi, a.back() + 2.0 * std::sqrt(b2.back()));
  }
  return {lo, hi};
}

InversionResult markov_inverse_detailed(const JacobiCoefficients& J, const InversionGrid& grid, double eps,
                                        bool extrapolate) {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (!(grid.left < 0.0 && grid.right > 0.0 && grid.step > 0.0))
    throw ConfigError("inversion grid must straddle 0 with a positive step");
  const auto cells = static_cast<std::size_t>(std::llround((grid.right - grid.left) / grid.step));
  const double h = (grid.right - grid.left) / static_cast<double>(cells);
  InversionResult out;
  out.x.resize(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) out.x[i] = grid.left + h * static_cast<double>(i);
  out.x.back() = grid.right;

  // log(zG) is continued from the left end, where zG is close to 1.
  auto phase_at = [&](double e, bool anchor) {
    std::vector<double> re(out.x.size()), im(out.x.size()), ph(out.x.size());
    simd::active().stieltjes_batch(J.fraction(), out.x, e, re, im);
    cplx prev;
    double phase = 0.0;
    for (std::size_t i = 0; i < out.x.size(); ++i) {
      const cplx zg = cplx(out.x[i], e) * cplx(re[i], im[i]);
      if (i == 0) {
        if (anchor) out.anchor_deviation = std::abs(zg - 1.0);
        if (std::abs(zg - 1.0) > 0.5)
          throw NumericError("branch anchor failed: |zG - 1| = " + fmt("%.3g", std::abs(zg - 1.0)) + " at x = " +
                             fmt("%g", out.x[0]) + "; widen the grid");
        phase = std::arg(zg);
      } else {
        const double d = std::arg(zg / prev);
        if (std::abs(d) > 0.75 * std::numbers::pi)
          throw NumericError("branch tracking lost between x = " + fmt("%g", out.x[i - 1]) + " and " +
                             fmt("%g", out.x[i]) + "; refine the grid or raise eps");
        phase += d;
      }
      prev = zg;
      ph[i] = phase / std::numbers::pi;
    }
    return ph;
  };
  out.sigma_prime = phase_at(eps, true);
  if (extrapolate) {
    // The smoothing error is linear in eps away from singular points.
    const auto half = phase_at(0.5 * eps, false);
    for (std::size_t i = 0; i < half.size(); ++i) out.sigma_prime[i] = 2.0 * half[i] - out.sigma_prime[i];
  }
  // Outside the spectrum of the Jacobi operator the density vanishes; what
  // the smoothing leaked there is dropped.
  const auto [lo, hi] = J.support_enclosure();
  for (std::size_t i = 0; i < out.x.size(); ++i)
    if (out.x[i] < lo || out.x[i] > hi) out.sigma_prime[i] = 0.0;

  std::vector<double> slope(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double mid = 0.5 * (out.x[i] + out.x[i + 1]);
    const double sg = mid > 0.0 ? 1.0 : (mid < 0.0 ? -1.0 : 0.0);
    slope[i] = std::clamp(sg + out.sigma_prime[i] + out.sigma_prime[i + 1], -1.0, 1.0);
  }
  auto integrate = [&] {
    std::vector<double> w(out.x.size());
    w[0] = std::abs(out.x[0]);
    for (std::size_t i = 0; i < cells; ++i) w[i + 1] = w[i] + slope[i] * (out.x[i + 1] - out.x[i]);
    return w;
  };
  std::vector<double> w = integrate();
  // Spread the right-end mismatch over the cells that have slope to spare.
  const double mismatch = w.back() - std::abs(out.x.back());
  if (mismatch != 0.0) {
    double slack = 0.0;
    auto inside = [&](std::size_t i) { return out.x[i + 1] > lo && out.x[i] < hi; };
    for (std::size_t i = 0; i < cells; ++i)
      if (inside(i)) slack += (mismatch > 0.0 ? slope[i] + 1.0 : 1.0 - slope[i]) * (out.x[i + 1] - out.x[i]);
    if (slack < std::abs(mismatch))
      throw NumericError("cannot close the profile inside the 1-Lipschitz cone (mismatch " + fmt("%.3g", mismatch) + ")");
    for (std::size_t i = 0; i < cells; ++i) {
      if (!inside(i)) continue;
      const double s = mismatch > 0.0 ? slope[i] + 1.0 : 1.0 - slope[i];
      slope[i] -= mismatch * s / slack;
    }
    w = integrate();
  }
  w.back() = std::abs(out.x.back());
  out.shape = ContinuousDiagram(out.x, std::move(w));
  return out;
}

ContinuousDiagram markov_inverse(const MomentSeq& M, const InversionGrid& grid, double eps) {
  return markov_inverse_detailed(jacobi_coefficients(M), grid, eps).shape;
}

ContinuousDiagram markov_inverse(const CumulantSeq& R, const InversionGrid& grid, double eps, int moment_order) {
  return markov_inverse_detailed(jacobi_coefficients(R, moment_order), grid, eps).shape;
}

void LimitShapeSpec::validate() const {
  if (std::abs(R0.at(1)) > 1e-9 || std::abs(R0.at(2) - 1.0) > 1e-9)
    throw ConfigError("limit shape needs R_1 = 0 and R_2 = 1");
  if (!(mean > 0.0)) throw ConfigError("mean pausing time must be positive");
  if (K < 2 || moment_order < 2) throw ConfigError("truncation orders must be >= 2");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
}

AtomicMeasure rectangle_limit_measure(double aspect) {
  if (!(aspect > 0.0)) throw ConfigError("aspect must be positive");
  const double s = std::sqrt(aspect);
  return AtomicMeasure({{-s, 1.0 / (1.0 + aspect)}, {1.0 / s, aspect / (1.0 + aspect)}});
}

CumulantSeq rectangle_limit_cumulants(double aspect, int K) {
  if (!(aspect > 0.0)) throw ConfigError("aspect must be positive");
  if (K < 2) throw ConfigError("K must be >= 2");
  const Wide a(aspect), s = boost::multiprecision::sqrt(a);
  const Wide x0 = -s, x1 = Wide(1) / s, w0 = Wide(1) / (Wide(1) + a), w1 = a / (Wide(1) + a);
  std::vector<Wide> M(static_cast<std::size_t>(K) + 1);
  Wide p0 = 1, p1 = 1;
  for (auto& m : M) {
    m = w0 * p0 + w1 * p1;
    p0 *= x0;
    p1 *= x1;
  }
  const auto R = detail::cumulants_from_moments(M);
  CumulantSeq out;
  for (int j = 1; j <= K; ++j) out.values.push_back(static_cast<double>(R[static_cast<std::size_t>(j)]));
  out.values[0] = 0.0;
  out.values[1] = 1.0;
  return out;
}

double pde_residual(const CumulantSeq& R0, double m, const PdeGrid& grid, double h, int moment_order) {
  if (!(h > 0.0) || !(m > 0.0)) throw ConfigError("pde_residual needs h > 0 and m > 0");
  const int order = std::min(moment_order, std::max(R0.order(), 2));
  auto J = [&](double t) { return evolved_jacobi_coefficients(R0, t, m, order); };
  double worst = 0.0;
  for (double t : grid.t) {
    if (t - h < 0.0) throw ConfigError("pde_residual time points must exceed the step");
    const auto j0 = J(t), jm = J(t - h), jp = J(t + h);
    for (cplx z : grid.z) {
      const cplx g = stieltjes(j0, z);
      const cplx gt = (stieltjes(jp, z) - stieltjes(jm, z)) / (2.0 * h);
      const cplx gz = (stieltjes(j0, z + h) - stieltjes(j0, z - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(m * gt + g * gz - gz / g - g));
    }
  }
  return worst;
}

namespace {

// F'' = log, F(0) = 0.
long double F(long double u) { return u > 0 ? 0.5L * u * u * std::log(u) - 0.75L * u * u : 0.0L; }

}  // namespace

double theta_energy(const ContinuousDiagram& w) {
  const auto& x = w.xs();
  const auto& y = w.omegas();
  const std::size_t n = x.size() - 1;
  std::vector<double> slope(n);
  for (std::size_t i = 0; i < n; ++i) slope[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double up = 1.0L - slope[i];  // weight of the right variable
    if (up == 0.0L) continue;
    const long double a = x[i], b = x[i + 1];
    sum += up * (1.0L + slope[i]) * F(b - a);
    for (std::size_t j = 0; j < i; ++j) {
      const long double down = 1.0L + slope[j];
      if (down == 0.0L) continue;
      const long double c = x[j], d = x[j + 1];
      sum += up * down * (F(b - c) - F(a - c) - F(b - d) + F(a - d));
    }
  }
  return static_cast<double>(1.0L + 0.5L * sum);
}

void write_cumulants_csv(std::ostream& os, const CumulantSeq& R) {
  os << "k,R_k\n";
  char buf[64];
  for (int j = 1; j <= R.order(); ++j) {
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", j, R.at(j));
    os << buf;
  }
}

void write_shape_csv(std::ostream& os, const InversionResult& r) {
  os << "x,omega_x,sigma_prime_x\n";
  char buf[96];
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g,%.12g,%.12g\n", r.x[i], r.shape.omegas()[i], r.sigma_prime[i]);
    os << buf;
  }
}

}  // namespace yw
