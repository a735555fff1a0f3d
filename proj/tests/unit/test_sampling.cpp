#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "youngwalk/error.hpp"
#include "youngwalk/sampling.hpp"

using namespace yw;

TEST_CASE("law parsing") {
  CHECK(std::holds_alternative<Exponential>(parse_law("exponential:2")));
  CHECK(std::get<OneSidedStable>(parse_law("stable:0.5")).alpha == 0.5);
  CHECK(std::holds_alternative<DeterministicUnit>(parse_law("unit")));
  CHECK_THROWS_AS(parse_law("stable:1.5"), ConfigError);
  CHECK_THROWS_AS(parse_law("exponential:-1"), ConfigError);
  CHECK_THROWS_AS(parse_law("gamma:1"), ConfigError);
}

TEST_CASE("counting process uses strict inequality") {
  Rng rng(1, 0);
  CHECK(count_jumps(DeterministicUnit{}, 3.0, rng) == 2);
  CHECK(count_jumps(DeterministicUnit{}, 3.5, rng) == 3);
  CHECK(count_jumps(DeterministicUnit{}, 0.0, rng) == 0);
  RenewalClock c(DeterministicUnit{});
  CHECK(c.advance_to(1.5, rng) == 1);
  CHECK(c.advance_to(4.5, rng) == 4);
  CHECK_THROWS_AS(c.advance_to(1.0, rng), ConfigError);
}

TEST_CASE("exponential counts are Poisson") {
  Rng rng(2, 0);
  const double s = 3.0;
  double sum = 0, sum2 = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const double n = static_cast<double>(count_jumps(Exponential{1.0}, s, rng));
    sum += n;
    sum2 += n * n;
  }
  const double mean = sum / trials, var = sum2 / trials - mean * mean;
  CHECK(std::abs(mean - s) < 5 * std::sqrt(s / trials));
  CHECK(std::abs(var - s) < 0.1);
}

TEST_CASE("Poisson shortcut matches explicit summation in law") {
  Rng a(3, 0), b(3, 1);
  std::vector<double> x, y;
  for (int i = 0; i < 20000; ++i) {
    RenewalClock fast(Exponential{1.0}, true), slow(Exponential{1.0}, false);
    x.push_back(static_cast<double>(fast.advance_to(40.0, a)));
    CHECK(fast.used_poisson_shortcut());
    y.push_back(static_cast<double>(slow.advance_to(40.0, b)));
  }
  const double d = ks_statistic_two_sample(x, y);
  CHECK(kolmogorov_pvalue_two_sample(d, x.size(), y.size()) > 1e-3);
}

TEST_CASE("one-sided stable sampler") {
  Rng rng(4, 0);
  std::vector<double> v;
  for (int i = 0; i < 100000; ++i) v.push_back(sample_pausing(OneSidedStable{0.5}, rng));
  // Levy law with scale 1: F(x) = erfc(sqrt(1/(2x))).
  const double d = ks_statistic(v, [](double x) { return std::erfc(std::sqrt(0.5 / x)); });
  CHECK(kolmogorov_pvalue(d, v.size()) > 0.01);
  for (double x : v) CHECK(x > 0.0);
}

TEST_CASE("stable Laplace transform matches the sampler") {
  Rng rng(5, 0);
  for (double alpha : {0.3, 0.5, 0.8}) {
    const OneSidedStable law{alpha};
    double s = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) s += std::exp(-sample_pausing(law, rng));
    CHECK(std::abs(s / trials - laplace_transform(law, 1.0)) < 0.01);
  }
}

TEST_CASE("characteristic functions") {
  CHECK(std::abs(characteristic_function(Exponential{2.0}, 0.0) - 1.0) < 1e-15);
  const auto c = characteristic_function(OneSidedStable{0.5}, 1.0);
  CHECK(std::abs(c - std::exp(std::complex<double>(-1.0, 1.0))) < 1e-12);
}

TEST_CASE("initializers") {
  const auto r = rectangle_initializer(4, 1.0);
  CHECK(r.to_string() == "2,2");
  const auto q = rectangle_initializer(10000, 2.0);
  CHECK(q.size() == 10000);
  CHECK(q.length() == 141);
  const auto odd = rectangle_initializer(7, 1.0);
  CHECK(odd.size() == 7);
  Rng rng(6, 0);
  std::map<std::string, int> freq;
  for (int i = 0; i < 30000; ++i) ++freq[plancherel_growth(3, rng).to_string()];
  CHECK(std::abs(freq["2,1"] / 30000.0 - 2.0 / 3) < 0.015);
}

TEST_CASE("ctrw evolution keeps the size") {
  Rng rng(7, 0);
  const auto d = ctrw_evolve(rectangle_initializer(50, 2.0), Exponential{1.0}, 100.0, rng);
  CHECK(d.size() == 50);
}

TEST_CASE("Monte Carlo kernel with exponential pauses") {
  Rng rng(8, 0);
  const auto e = f_monte_carlo(3, 100, 50.0, Exponential{1.0}, 20000, rng);
  CHECK(std::abs(e.value - std::exp(-1.5)) < 4 * e.stderr_);
  CHECK_THROWS_AS(f_monte_carlo(1, 100, 1.0, Exponential{1.0}, 10, rng), ConfigError);
}
