#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "youngwalk/rng.hpp"
#include "youngwalk/young.hpp"

namespace yw {

struct Exponential {
  double mean = 1.0;
};
// Characteristic function exp(-|xi|^alpha (1 - i tan(pi alpha/2) sgn xi)).
struct OneSidedStable {
  double alpha = 0.5;
};
struct DeterministicUnit {};

using PausingLaw = std::variant<Exponential, OneSidedStable, DeterministicUnit>;

void validate(const PausingLaw& law);
std::string describe(const PausingLaw& law);
// "exponential:<mean>", "stable:<alpha>" or "unit".
PausingLaw parse_law(std::string_view text);

double sample_pausing(const PausingLaw& law, Rng& rng);
std::complex<double> characteristic_function(const PausingLaw& law, double xi);
// E[exp(-lambda tau)].
double laplace_transform(const PausingLaw& law, double lambda);

// Exponential pauses with an expected count above this use
// N_s ~ Poisson(s/m) instead of summing pauses.
inline constexpr double kPoissonShortcutMean = 16.0;

// N_s = #{ j >= 1 : tau_1 + ... + tau_j < s }.
long long count_jumps(const PausingLaw& law, double s, Rng& rng);

// Renewal counter that can be advanced through increasing checkpoints.
class RenewalClock {
 public:
  explicit RenewalClock(PausingLaw law, bool allow_poisson_shortcut = true);

  // Advances to time s >= clock() and returns the new N_s.
  long long advance_to(double s, Rng& rng);

  long long jumps() const { return jumps_; }
  double clock() const { return clock_; }
  double next_arrival() const { return next_arrival_; }
  bool used_poisson_shortcut() const { return used_shortcut_; }

 private:
  PausingLaw law_;
  bool allow_shortcut_;
  bool started_ = false;
  bool used_shortcut_ = false;
  long long jumps_ = 0;
  double clock_ = 0.0;
  double next_arrival_ = 0.0;
};

struct TrajectoryState {
  YoungDiagram current;
  long long jumps_taken = 0;
  double clock = 0.0;
  double next_arrival = 0.0;
};

// n successive induction steps from the empty diagram.
YoungDiagram plancherel_growth(long long n, Rng& rng);

// p = round(sqrt(n*aspect)) rows of length q = floor(n/p). The remainder
// r = n - p*q becomes a short last row when r <= q; otherwise the first r
// rows get one extra box.
YoungDiagram rectangle_initializer(long long n, double aspect);

// X_s = Z_{N_s}.
YoungDiagram ctrw_evolve(const YoungDiagram& lambda0, const PausingLaw& law, double s, Rng& rng);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Sample mean of (1 - k/n)^{N_s}.
Estimate f_monte_carlo(int k, long long n, double s, const PausingLaw& law, long long trials, Rng& rng);

// One-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
double kolmogorov_pvalue(double d, std::size_t n);
// Two-sample version.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);
double kolmogorov_pvalue_two_sample(double d, std::size_t n, std::size_t m);

}  // namespace yw
