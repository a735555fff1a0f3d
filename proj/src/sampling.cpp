#include "youngwalk/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "youngwalk/error.hpp"
#include "youngwalk/resind.hpp"

namespace yw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

}  // namespace

void validate(const PausingLaw& law) {
  std::visit(overloaded{
                 [](const Exponential& e) {
                   if (!(e.mean > 0.0) || !std::isfinite(e.mean))
                     throw ConfigError("exponential mean must be finite and positive");
                 },
                 [](const OneSidedStable& s) {
                   if (!(s.alpha > 0.0 && s.alpha < 1.0)) throw ConfigError("stable exponent must lie in (0,1)");
                 },
                 [](const DeterministicUnit&) {},
             },
             law);
}

std::string describe(const PausingLaw& law) {
  return std::visit(overloaded{
                        [](const Exponential& e) { return "exponential:" + std::to_string(e.mean); },
                        [](const OneSidedStable& s) { return "stable:" + std::to_string(s.alpha); },
                        [](const DeterministicUnit&) { return std::string("unit"); },
                    },
                    law);
}

PausingLaw parse_law(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  PausingLaw law;
  if (name == "exponential") {
    law = Exponential{arg.empty() ? 1.0 : parse_double(arg, "exponential mean")};
  } else if (name == "stable") {
    if (arg.empty()) throw ConfigError("stable law needs an exponent, e.g. stable:0.5");
    law = OneSidedStable{parse_double(arg, "stable exponent")};
  } else if (name == "unit") {
    law = DeterministicUnit{};
  } else {
    throw ConfigError("unknown pausing law '" + std::string(text) + "' (exponential:<m>, stable:<alpha>, unit)");
  }
  validate(law);
  return law;
}

double sample_pausing(const PausingLaw& law, Rng& rng) {
  return std::visit(
      overloaded{
          [&](const Exponential& e) { return e.mean * rng.exponential(); },
          [&](const OneSidedStable& s) {
            // Chambers-Mallows-Stuck with skewness 1: B = pi/2 and
            // scale factor (1/cos(pi alpha/2))^{1/alpha}.
            const double a = s.alpha;
            const double v = std::numbers::pi * (rng.uniform() - 0.5);
            const double w = rng.exponential();
            const double b = 0.5 * std::numbers::pi;
            const double scale = std::pow(1.0 / std::cos(0.5 * std::numbers::pi * a), 1.0 / a);
            const double t = a * (v + b);
            return scale * std::sin(t) / std::pow(std::cos(v), 1.0 / a) *
                   std::pow(std::cos(v - t) / w, (1.0 - a) / a);
          },
          [](const DeterministicUnit&) { return 1.0; },
      },
      law);
}

std::complex<double> characteristic_function(const PausingLaw& law, double xi) {
  using namespace std::complex_literals;
  return std::visit(overloaded{
                        [&](const Exponential& e) { return 1.0 / (1.0 - 1i * e.mean * xi); },
                        [&](const OneSidedStable& s) {
                          const double sg = xi > 0 ? 1.0 : (xi < 0 ? -1.0 : 0.0);
                          const double tn = std::tan(0.5 * std::numbers::pi * s.alpha);
                          return std::exp(-std::pow(std::abs(xi), s.alpha) * (1.0 - 1i * tn * sg));
                        },
                        [&](const DeterministicUnit&) { return std::exp(1i * xi); },
                    },
                    law);
}

double laplace_transform(const PausingLaw& law, double lambda) {
  return std::visit(overloaded{
                        [&](const Exponential& e) { return 1.0 / (1.0 + e.mean * lambda); },
                        [&](const OneSidedStable& s) {
                          return std::exp(-std::pow(lambda, s.alpha) / std::cos(0.5 * std::numbers::pi * s.alpha));
                        },
                        [&](const DeterministicUnit&) { return std::exp(-lambda); },
                    },
                    law);
}

long long count_jumps(const PausingLaw& law, double s, Rng& rng) {
  RenewalClock clock(law);
  return clock.advance_to(s, rng);
}

RenewalClock::RenewalClock(PausingLaw law, bool allow_poisson_shortcut)
    : law_(std::move(law)), allow_shortcut_(allow_poisson_shortcut) {
  validate(law_);
}

long long RenewalClock::advance_to(double s, Rng& rng) {
  if (s < clock_) throw ConfigError("renewal clock cannot run backwards");
  if (const auto* e = std::get_if<Exponential>(&law_);
      e && allow_shortcut_ && (s - clock_) / e->mean > kPoissonShortcutMean) {
    // Memoryless pauses: the count over (clock, s] is Poisson and the
    // residual pause is again exponential.
    jumps_ += rng.poisson((s - clock_) / e->mean);
    clock_ = s;
    next_arrival_ = s + sample_pausing(law_, rng);
    started_ = true;
    used_shortcut_ = true;
    return jumps_;
  }
  if (!started_) {
    next_arrival_ = sample_pausing(law_, rng);
    started_ = true;
  }
  while (next_arrival_ < s) {
    ++jumps_;
    next_arrival_ += sample_pausing(law_, rng);
  }
  clock_ = s;
  return jumps_;
}

YoungDiagram plancherel_growth(long long n, Rng& rng) {
  if (n < 0) throw ConfigError("plancherel_growth: n must be >= 0");
  YoungDiagram d;
  ResIndStepper stepper;
  for (long long i = 0; i < n; ++i) stepper.up(d, rng);
  return d;
}

YoungDiagram rectangle_initializer(long long n, double aspect) {
  if (n < 1) throw ConfigError("rectangle_initializer: n must be >= 1");
  if (!(aspect > 0.0)) throw ConfigError("rectangle_initializer: aspect must be positive");
  const long long p = std::max(1LL, std::llround(std::sqrt(static_cast<double>(n) * aspect)));
  const long long q = n / p;
  const long long r = n - p * q;
  std::vector<int> rows;
  if (q == 0) {
    rows.assign(static_cast<std::size_t>(n), 1);
  } else if (r <= q) {
    rows.assign(static_cast<std::size_t>(p), static_cast<int>(q));
    if (r > 0) rows.push_back(static_cast<int>(r));
  } else {
    rows.assign(static_cast<std::size_t>(p), static_cast<int>(q));
    for (long long i = 0; i < r; ++i) ++rows[static_cast<std::size_t>(i)];
  }
  return YoungDiagram(std::move(rows));
}

YoungDiagram ctrw_evolve(const YoungDiagram& lambda0, const PausingLaw& law, double s, Rng& rng) {
  const long long jumps = count_jumps(law, s, rng);
  if (lambda0.empty() || jumps == 0) return lambda0;
  ResIndWalker walker(lambda0);
  walker.steps(jumps, rng);
  return walker.diagram();
}

Estimate f_monte_carlo(int k, long long n, double s, const PausingLaw& law, long long trials, Rng& rng) {
  if (k < 2 || k > n) throw ConfigError("f_monte_carlo needs 2 <= k <= n");
  if (trials < 2) throw ConfigError("f_monte_carlo needs at least two trials");
  const double q = 1.0 - static_cast<double>(k) / static_cast<double>(n);
  double sum = 0.0, sum2 = 0.0;
  for (long long i = 0; i < trials; ++i) {
    const long long jumps = count_jumps(law, s, rng);
    const double v = q == 0.0 ? (jumps == 0 ? 1.0 : 0.0) : std::pow(q, static_cast<double>(jumps));
    sum += v;
    sum2 += v * v;
  }
  const double tr = static_cast<double>(trials);
  const double mean = sum / tr;
  const double var = std::max(0.0, (sum2 - tr * mean * mean) / (tr - 1.0));
  return {mean, std::sqrt(var / tr)};
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

namespace {

double kolmogorov_tail(double d, double n_eff) {
  const double sn = std::sqrt(n_eff);
  const double lam = (sn + 0.12 + 0.11 / sn) * d;
  if (lam < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lam * lam);
    sum += (j % 2 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double kolmogorov_pvalue(double d, std::size_t n) { return kolmogorov_tail(d, static_cast<double>(n)); }

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double kolmogorov_pvalue_two_sample(double d, std::size_t n, std::size_t m) {
  const double ne = static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m);
  return kolmogorov_tail(d, ne);
}

}  // namespace yw
