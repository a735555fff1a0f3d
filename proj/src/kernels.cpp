#include "youngwalk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "youngwalk/error.hpp"

namespace yw {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
// exp(-46) ~ 1e-20: integrands below this fraction of their scale are dropped.
constexpr double kDecayCut = 46.0;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Globally adaptive 15/31-point Gauss-Kronrod: the interval with the largest
// error is bisected until the total error is below max(abs_tol, rel_tol |I|)
// or the interval budget runs out.
template <class F>
KernelValue gk_adaptive(F& f, double a, double b, double rel_tol, double abs_tol, int max_intervals = 400) {
  struct Piece {
    double a, b, v, e;
    bool operator<(const Piece& o) const { return e < o.e; }
  };
  auto rule = [&](double lo, double hi) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &err);
    return Piece{lo, hi, v, err};
  };
  std::priority_queue<Piece> heap;
  Piece first = rule(a, b);
  double total = first.v, err = first.e;
  heap.push(first);
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && static_cast<int>(heap.size()) < max_intervals) {
    const Piece p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    const Piece l = rule(p.a, mid), r = rule(mid, p.b);
    total += l.v + r.v - p.v;
    err += l.e + r.e - p.e;
    heap.push(l);
    heap.push(r);
  }
  return {total, err};
}

template <class F>
KernelValue integrate_pieces(F&& f, std::vector<double> bps, double rel_tol = 1e-10, double abs_tol = 1e-14) {
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  KernelValue acc;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    const auto p = gk_adaptive(f, bps[i], bps[i + 1], rel_tol, abs_tol);
    acc.value += p.value;
    acc.error_estimate += p.error_estimate;
  }
  return acc;
}

void push_geometric(std::vector<double>& bps, double from, double to, double ratio = 2.0) {
  for (double x = from; x < to; x *= ratio) bps.push_back(x);
  bps.push_back(to);
}

void check_converged(const KernelValue& v, const char* what) {
  if (!std::isfinite(v.value) || v.error_estimate > 1e-8 * std::abs(v.value) + 1e-10)
    throw NumericError(std::string(what) + ": quadrature did not converge (value " + fmt("%.10g", v.value) +
                       ", error estimate " + fmt("%.3g", v.error_estimate) + ")");
}

const OneSidedStable& stable_law(const KernelQuery& q) {
  const auto* st = std::get_if<OneSidedStable>(&q.law);
  if (!st) throw ConfigError("f_stable_quadrature needs a one-sided stable pausing law");
  return *st;
}

}  // namespace

void KernelQuery::validate() const {
  if (k < 2) throw ConfigError("kernel query needs k >= 2");
  if (n < k) throw ConfigError("kernel query needs n >= k");
  if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("kernel query needs finite s >= 0");
  yw::validate(law);
}

double f_exponential(const KernelQuery& q) {
  q.validate();
  const auto* e = std::get_if<Exponential>(&q.law);
  if (!e) throw ConfigError("f_exponential needs an exponential pausing law");
  return std::exp(-(q.s / e->mean) * (static_cast<double>(q.k) / static_cast<double>(q.n)));
}

double f_half_stable_truncated(int k, long long n, double s, double upper) {
  const double nd = static_cast<double>(n), kd = k;
  auto F = [=](double y) {
    const double u = y / nd;
    const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
    const double h = std::sin(0.5 * u);
    return std::exp(-s * y * y / (2.0 * nd * nd)) * sinc / (4.0 * nd * (nd - kd) * h * h + kd * kd);
  };
  std::vector<double> bps{0.0};
  push_geometric(bps, kd / 64.0, std::min(upper, kPi * nd));
  for (double y = kPi * nd; y < upper; y += kPi * nd) bps.push_back(y);
  bps.push_back(upper);
  return 2.0 * kd / kPi * integrate_pieces(F, bps).value;
}

KernelValue f_stable_quadrature(const KernelQuery& q) {
  q.validate();
  const double alpha = stable_law(q).alpha;
  if (q.s == 0.0) return {1.0, 0.0};
  const double nd = static_cast<double>(q.n), kd = q.k, r = kd / nd, qq = 1.0 - r;

  if (alpha == 0.5) {
    // y-form: the integrand has period 2 pi n in y apart from the Gaussian and
    // sinc factors, with sharp revivals at multiples of 2 pi n.
    const double s = q.s;
    auto F = [=](double y) {
      const double u = y / nd;
      const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
      const double h = std::sin(0.5 * u);
      return std::exp(-s * y * y / (2.0 * nd * nd)) * sinc / (4.0 * nd * (nd - kd) * h * h + kd * kd);
    };
    const double ymax = nd * std::sqrt(2.0 * kDecayCut / s);
    const double period = 2.0 * kPi * nd;
    if (ymax / period > 1e5) throw NumericError("f_stable_quadrature: s = " + fmt("%g", s) + " too small for quadrature");
    std::vector<double> bps{0.0};
    push_geometric(bps, kd / 64.0, std::min(ymax, 0.5 * period));
    for (double y = 0.5 * period; y < ymax; y += 0.5 * period) {
      bps.push_back(y);
      for (double w : {1.0, 8.0, 64.0})
        for (double sg : {-1.0, 1.0}) {
          const double p = y + sg * w * kd;
          if (p > 0.0 && p < ymax) bps.push_back(p);
        }
    }
    bps.push_back(ymax);
    KernelValue v = integrate_pieces(F, bps);
    v.value *= 2.0 * kd / kPi;
    v.error_estimate *= 2.0 * kd / kPi;
    check_converged(v, "f_stable_quadrature");
    return v;
  }

  const double c = std::cos(kPi * alpha) / std::cos(0.5 * kPi * alpha);
  const double b = 2.0 * std::sin(0.5 * kPi * alpha);
  const double s = q.s, ia = 1.0 / alpha;
  // At x -> 0 the integrand tends to b / r^2; below the stitch point that
  // limit (times the damping) is used directly.
  const double stitch = 1e-6 * r;
  auto F = [=](double x) {
    const double damp = std::exp(-s * std::pow(x, ia));
    if (x < stitch) return damp * b / (r * r);
    const double e = std::exp(-c * x);
    const double lin = r - qq * std::expm1(-c * x);  // 1 - q e^{-cx}
    const double h = std::sin(0.5 * b * x);
    const double D = lin * lin + 4.0 * qq * e * h * h;
    return damp * e * std::sin(b * x) / (x * D);
  };
  double xmax = std::pow(kDecayCut / s, alpha);
  if (c != 0.0) xmax = std::min(xmax, kDecayCut / std::abs(c) + 1.0);
  const double half = kPi / b;
  if (xmax / half > 2e5) throw NumericError("f_stable_quadrature: integration range too long; s = " + fmt("%g", s));
  std::vector<double> bps{0.0};
  push_geometric(bps, r / 64.0, std::min(xmax, half));
  for (double x = half; x < xmax; x += half) {
    bps.push_back(x);
    for (double w : {1.0, 8.0})
      for (double sg : {-1.0, 1.0}) {
        const double p = x + sg * w * r;
        if (p > 0.0 && p < xmax) bps.push_back(p);
      }
  }
  bps.push_back(xmax);
  KernelValue v = integrate_pieces(F, bps);
  const double pre = kd / (kPi * alpha * nd);
  v.value *= pre;
  v.error_estimate *= pre;
  check_converged(v, "f_stable_quadrature");
  return v;
}

KernelValue f_fourier_inversion(const KernelQuery& q, const CharacteristicFn& phi) {
  q.validate();
  if (q.s == 0.0) return {1.0, 0.0};
  const double r = static_cast<double>(q.k) / static_cast<double>(q.n), qq = 1.0 - r, s = q.s;

  // Scale where 1 - q phi leaves its small-xi regime, and a decay check.
  double xs = 0.0;
  bool decays = false;
  for (double xi = 1e-14; xi < 1e14; xi *= 2.0) {
    const cplx p = phi(xi);
    if (xs == 0.0 && std::abs(1.0 - p) >= r) xs = xi;
    if (std::abs(p) < 1e-3) {
      decays = true;
      break;
    }
  }
  if (!decays || xs == 0.0)
    throw NumericError("f_fourier_inversion: characteristic function does not decay at the sampled frequencies");

  // Subtracting the 1/xi part analytically (it contributes 1/2) leaves an
  // integrand that is regular at xi = 0.
  auto F = [&](double xi) {
    const cplx p = phi(xi);
    const cplx A = r * p / (1.0 - qq * p);
    return std::imag(A * std::exp(cplx(0.0, -xi * s))) / xi;
  };
  const double half = kPi / s;
  const double xi0 = std::max(64.0 * xs, 8.0 * half);
  if (xi0 / half > 1e6) throw NumericError("f_fourier_inversion: too many oscillations before the tail");
  std::vector<double> bps{0.0};
  push_geometric(bps, xs / 64.0, std::min(xi0, 64.0 * xs));
  for (double x = half; x < xi0; x += half) bps.push_back(x);
  bps.push_back(xi0);
  KernelValue head = integrate_pieces(F, bps, 1e-12, 1e-15);

  // Tail: partial sums over half periods, accelerated by repeated averaging.
  std::vector<double> partial{0.0};
  double prev_est = 0.0, est = 0.0, diff = 1.0;
  const int max_terms = 200000;
  for (int j = 0; j < max_terms; ++j) {
    const double a = xi0 + j * half;
    const auto piece = gk_adaptive(F, a, a + half, 1e-12, 1e-16);
    partial.push_back(partial.back() + piece.value);
    head.error_estimate += piece.error_estimate;
    if (partial.size() >= 24 && (j % 8 == 0)) {
      std::vector<double> avg(partial.end() - 24, partial.end());
      for (int level = 0; level < 20; ++level)
        for (std::size_t i = 0; i + 1 < avg.size() - level; ++i) avg[i] = 0.5 * (avg[i] + avg[i + 1]);
      est = avg[0];
      diff = std::abs(est - prev_est);
      prev_est = est;
      if (diff < 1e-12 && j > 64) break;
    }
  }
  if (diff > 1e-8) throw NumericError("f_fourier_inversion: tail acceleration did not settle (" + fmt("%.3g", diff) + ")");
  KernelValue out;
  out.value = 0.5 + (head.value + est) / kPi;
  out.error_estimate = (head.error_estimate + diff) / kPi;
  return out;
}

KernelValue f_fourier_inversion(const KernelQuery& q) {
  q.validate();
  if (std::holds_alternative<DeterministicUnit>(q.law))
    throw ConfigError("f_fourier_inversion needs a pausing law without atoms");
  const PausingLaw law = q.law;
  return f_fourier_inversion(q, [law](double xi) { return characteristic_function(law, xi); });
}

double g_alpha(double u, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("g_alpha needs 0 < alpha < 1");
  if (!(u >= 0.0)) throw ConfigError("g_alpha needs u >= 0");
  // xi = tan(theta) maps the half line onto [0, pi/2) and makes the rational
  // factor 1 / (1 + sin(2 theta) cos(pi alpha)).
  const double ca = std::cos(0.5 * kPi * alpha), cpa = std::cos(kPi * alpha), ia = 1.0 / alpha;
  auto F = [=](double th) {
    const double t = std::tan(th);
    const double damp = u == 0.0 ? 1.0 : std::exp(-u * std::pow(t * ca, ia));
    return damp / (1.0 + std::sin(2.0 * th) * cpa);
  };
  std::vector<double> bps{0.0, 0.5 * kPi};
  if (u > 0.0) {
    const double star = std::atan(std::pow(u, -alpha) / ca);
    for (int j = -10; j <= 6; ++j) {
      const double p = star * std::ldexp(1.0, j);
      if (p < 0.5 * kPi) bps.push_back(p);
    }
  }
  const auto v = integrate_pieces(F, bps, 1e-13, 1e-15);
  return std::sin(kPi * alpha) / (kPi * alpha) * v.value;
}

double g_alpha_asymptote(double u, double alpha) {
  return 2.0 * std::sin(0.5 * kPi * alpha) * std::tgamma(alpha) / (kPi * std::pow(u, alpha));
}

Regime parse_regime(const std::string& s) {
  if (s == "sub") return Regime::sub;
  if (s == "super") return Regime::super;
  if (s == "critical") return Regime::critical;
  throw ConfigError("unknown regime '" + s + "' (sub, super, critical)");
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::sub: return "sub";
    case Regime::super: return "super";
    case Regime::critical: return "critical";
  }
  return "?";
}

double prop_limits(int k, double t, double alpha, Regime regime) {
  switch (regime) {
    case Regime::sub: return 1.0;
    case Regime::super: return 0.0;
    case Regime::critical: return g_alpha(t * std::pow(static_cast<double>(k), 1.0 / alpha), alpha);
  }
  return 0.0;
}

double prop_limit_exponential(int k, double t, double m) {
  if (!(m > 0.0)) throw ConfigError("mean must be positive");
  return std::exp(-k * t / m);
}

double factorization_defect_main_term(int k, int mrep, double t, double alpha) {
  if (k < 2 || mrep < 1) throw ConfigError("factorization defect needs k >= 2 and mrep >= 1");
  const double ia = 1.0 / alpha;
  const double g2 = g_alpha(t * std::pow(2.0 * k * mrep, ia), alpha);
  const double g1 = g_alpha(t * std::pow(static_cast<double>(k) * mrep, ia), alpha);
  return g2 - g1 * g1;
}

void write_kernel_table_csv(std::ostream& os, const std::vector<KernelRow>& rows) {
  os << "k,n,s,method,value,error_estimate\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%lld,%.10g,%s,%.12g,%.3g\n", r.k, r.n, r.s, r.method.c_str(), r.v.value,
                  r.v.error_estimate);
    os << buf;
  }
}

}  // namespace yw
