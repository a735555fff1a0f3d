#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "youngwalk/error.hpp"
#include "youngwalk/resind.hpp"

using namespace yw;

TEST_CASE("small chain: stochastic, Plancherel-invariant, reversible") {
  for (int n = 1; n <= 8; ++n) {
    const auto c = full_matrix(n);
    const auto N = c.P.rows();
    for (Eigen::Index a = 0; a < N; ++a) CHECK(std::abs(c.P.row(a).sum() - 1.0) < 1e-12);
    CHECK(std::abs(c.plancherel.sum() - 1.0) < 1e-12);
    CHECK((c.plancherel.transpose() * c.P - c.plancherel.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    for (Eigen::Index a = 0; a < N; ++a)
      for (Eigen::Index b = 0; b < N; ++b)
        CHECK(std::abs(c.plancherel(a) * c.P(a, b) - c.plancherel(b) * c.P(b, a)) < 1e-12);
  }
}

TEST_CASE("two-box chain") {
  const auto c = full_matrix(2);
  // From (2): remove to (1), then add to (2) or (1,1) with probability 1/2.
  CHECK(c.P(0, 0) == doctest::Approx(0.5));
  CHECK(c.P(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("characters are eigenfunctions") {
  for (int n = 4; n <= 8; ++n) {
    const auto c = full_matrix(n);
    for (const auto* rho : {"2", "3", "2,2", "4"}) {
      const auto r = CyclePartition::parse(rho);
      if (r.size() > n) continue;
      CHECK(eigen_identity_residual(c, r) <= 1e-10);
    }
  }
  CHECK(sigma_eigenvalue(4, CyclePartition({2})) == doctest::Approx(0.5));
}

TEST_CASE("log-hook transition rows sum to one on random large diagrams") {
  std::mt19937_64 g(21);
  std::uniform_real_distribution<double> lu(0.0, std::log(1e5));
  for (int rep = 0; rep < 10000; ++rep) {
    const auto target = static_cast<long long>(std::exp(lu(g)));
    // Random diagram with about `target` boxes: random decreasing rows.
    const int rows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(target)) * (0.5 + (g() % 100) / 100.0)));
    std::vector<int> r(static_cast<std::size_t>(rows));
    const double avg = static_cast<double>(target) / rows;
    for (auto& v : r) v = 1 + static_cast<int>((g() % 2000) / 1000.0 * avg);
    std::sort(r.rbegin(), r.rend());
    const YoungDiagram d(r);
    const auto down = down_distribution(d);
    CHECK(std::abs(down.total() - 1.0) < 1e-12);
    YoungDiagram nu = d;
    nu.remove_box(removable_corners(d).front().row);
    const auto up = up_distribution(nu, d.size());
    CHECK(std::abs(up.total() - 1.0) < 1e-12);
    for (const auto& [mu, p] : up.targets) CHECK(p > 0.0);
  }
}

TEST_CASE("stepper frequencies follow the exact rows") {
  const YoungDiagram start({3, 2, 1});
  std::map<YoungDiagram, double> expect;
  for (const auto& [nu, pd] : down_distribution(start).targets)
    for (const auto& [mu, pu] : up_distribution(nu, start.size()).targets) expect[mu] += pd * pu;
  Rng rng(5, 0);
  ResIndStepper st;
  std::map<YoungDiagram, int> seen;
  const int trials = 200000;
  for (int i = 0; i < trials; ++i) {
    YoungDiagram d = start;
    st.step(d, rng);
    ++seen[d];
  }
  for (const auto& [mu, p] : expect) {
    const double f = static_cast<double>(seen[mu]) / trials;
    CHECK(std::abs(f - p) < 5.0 * std::sqrt(p * (1 - p) / trials) + 1e-12);
  }
  CHECK(seen.size() == expect.size());
}

TEST_CASE("induction from the empty diagram and size preservation") {
  Rng rng(1, 1);
  ResIndStepper st;
  YoungDiagram d;
  CHECK_THROWS_AS(st.down(d, rng), ConfigError);
  for (int i = 0; i < 500; ++i) st.up(d, rng);
  CHECK(d.size() == 500);
  for (int i = 0; i < 200; ++i) st.step(d, rng);
  CHECK(d.size() == 500);
}

TEST_CASE("matrix export") {
  std::ostringstream os;
  write_matrix_csv(os, full_matrix(3));
  CHECK(os.str().find("\"2,1\"") != std::string::npos);
  CHECK_THROWS_AS(full_matrix(11), ConfigError);
}

TEST_CASE("incremental walker keeps exact corner weights") {
  Rng rng(11, 0);
  ResIndWalker walker(YoungDiagram(std::vector<int>(40, 75)), 1 << 30);
  walker.steps(5000, rng);
  ResIndWalker fresh(walker.diagram());
  REQUIRE(walker.valleys() == fresh.valleys());
  REQUIRE(walker.peaks() == fresh.peaks());
  for (std::size_t i = 0; i < fresh.valley_weights().size(); ++i)
    CHECK(walker.valley_weights()[i] == doctest::Approx(fresh.valley_weights()[i]).epsilon(1e-9));
  for (std::size_t j = 0; j < fresh.peak_weights().size(); ++j)
    CHECK(walker.peak_weights()[j] == doctest::Approx(fresh.peak_weights()[j]).epsilon(1e-9));
}

TEST_CASE("walker follows the same path as the stepper") {
  for (const char* start : {"1", "2,1", "5,3,3,1", "40,20,20,7,1"}) {
    Rng a(5, 1), b(5, 1);
    YoungDiagram d = YoungDiagram::parse(start);
    ResIndStepper stepper;
    ResIndWalker walker(d, 7);
    for (int i = 0; i < 2000; ++i) {
      stepper.step(d, a);
      walker.step(b);
    }
    CHECK(d == walker.diagram());
  }
}
