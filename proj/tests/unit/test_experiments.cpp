#include <doctest.h>

#include <cmath>

#include "youngwalk/characters.hpp"
#include "youngwalk/error.hpp"
#include "youngwalk/experiments.hpp"

using namespace yw;

namespace {
ExperimentSpec rectangle_spec(long long n, std::vector<double> t, int trajectories) {
  ExperimentSpec s;
  s.n_grid = {n};
  s.initializer = InitKind::rectangle;
  s.aspect = 2.0;
  s.time_points = std::move(t);
  s.trajectories = trajectories;
  s.K = 4;
  s.master_seed = 11;
  return s;
}
}  // namespace

TEST_CASE("t = 0 reproduces the starting diagram exactly") {
  const auto spec = rectangle_spec(800, {0.0}, 3);
  const auto stats = run_ensemble(spec);
  const auto& cell = stats.at(800, 0.0);
  const auto R0 = initial_cumulants(spec, 800, 4);
  CHECK(cell.count == 3);
  CHECK(cell.mean_jumps == 0.0);
  for (int j = 1; j <= 4; ++j) {
    CHECK(cell.cumulants[j - 1].mean == doctest::Approx(R0.at(j)).epsilon(1e-12));
    CHECK(cell.cumulants[j - 1].var < 1e-20);
  }
}

TEST_CASE("propagation identity on the exact chain") {
  for (int n = 2; n <= 6; ++n)
    for (const char* rho : {"2", "3"})
      for (double s : {0.5, 1.0, 2.0}) {
        const auto r = CyclePartition::parse(rho);
        if (r.size() > n) continue;
        CHECK(propagation_check(n, r, Exponential{1.0}, s) < 1e-10);
      }
  CHECK(propagation_check(6, CyclePartition::parse("2"), Exponential{2.0}, 1.5, YoungDiagram::parse("3,2,1")) < 1e-10);
  CHECK(propagation_check(5, CyclePartition::parse("3"), Exponential{1.0}, 0.0) < 1e-12);
}

TEST_CASE("unit pauses count completed jumps strictly before s") {
  // s = 3 allows two jumps, s = 3.5 three; both must match f with the same rule.
  for (double s : {1.0, 3.0, 3.5, 5.0})
    CHECK(propagation_check(5, CyclePartition::parse("2"), DeterministicUnit{}, s) < 1e-12);
  CHECK_THROWS_AS(propagation_check(5, CyclePartition::parse("2"), OneSidedStable{0.5}, 1.0), ConfigError);
  CHECK_THROWS_AS(propagation_check(9, CyclePartition::parse("2"), Exponential{}, 1.0), ConfigError);
}

TEST_CASE("class product identity behind the defect estimator") {
  // Sigma_2^2 = Sigma_{2,2} + 4 Sigma_3 + 2 n (n - 1) on every diagram.
  const CyclePartition c2 = CyclePartition::parse("2"), c3 = CyclePartition::parse("3"),
                       c22 = CyclePartition::parse("2,2");
  for (int n = 4; n <= 7; ++n)
    for (const auto& lam : partitions_of(n)) {
      const Rational s2 = sigma_exact(c2, lam);
      const Rational lhs = s2 * s2;
      const Rational rhs = sigma_exact(c22, lam) + 4 * sigma_exact(c3, lam) + Rational(2 * n * (n - 1));
      CHECK(lhs == rhs);
      const auto R = free_cumulants_exact(lam, 4);
      CHECK(s2 == R[2]);
      CHECK(sigma_exact(c3, lam) == R[3] + R[1]);
    }
}

TEST_CASE("ensembles do not depend on the worker count") {
  auto spec = rectangle_spec(300, {0.0, 0.5, 1.0}, 7);
  spec.profile_points = 9;
  spec.workers = 1;
  const auto a = run_ensemble(spec);
  spec.workers = 3;
  const auto b = run_ensemble(spec);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].mean_jumps == b.cells[i].mean_jumps);
    for (std::size_t j = 0; j < a.cells[i].moments.size(); ++j) {
      CHECK(a.cells[i].moments[j].mean == b.cells[i].moments[j].mean);
      CHECK(a.cells[i].moments[j].var == b.cells[i].moments[j].var);
    }
    CHECK(a.cells[i].profile_mean == b.cells[i].profile_mean);
    CHECK(a.cells[i].defect == b.cells[i].defect);
  }
}

TEST_CASE("diffusive cumulants decay at the predicted rate") {
  auto spec = rectangle_spec(1000, {0.5}, 24);
  spec.profile_points = 121;
  const auto tab = theorem11_reproduction(spec);
  for (const auto& r : tab.rows) {
    CHECK(std::abs(r.z) < 5.0);
    if (r.k == 2) CHECK(r.rel_error < 0.15);
  }
  REQUIRE(tab.profiles.size() == 1);
  CHECK(tab.profiles[0].sup_distance < 0.1);
}

TEST_CASE("concentration report needs more than one size") {
  const auto stats = run_ensemble(rectangle_spec(100, {0.5}, 4));
  CHECK_THROWS_AS(concentration_report(stats, initial_cumulants(stats.spec, 100, 4)), ConfigError);
  auto spec = rectangle_spec(100, {0.5}, 6);
  spec.n_grid = {100, 400};
  const auto rep = concentration_report(run_ensemble(spec), initial_cumulants(spec, 400, 4));
  CHECK(rep.n_grid.size() == 2);
  CHECK(!rep.trends.empty());
}

TEST_CASE("spec validation lists every problem") {
  ExperimentSpec s;
  s.n_grid = {};
  s.trajectories = 0;
  s.time_points = {1.0, 0.5};
  try {
    s.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string m = e.what();
    CHECK(m.find("n_grid") != std::string::npos);
    CHECK(m.find("trajectories") != std::string::npos);
    CHECK(m.find("time_points") != std::string::npos);
  }
}
