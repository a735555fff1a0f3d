#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "youngwalk/characters.hpp"
#include "youngwalk/error.hpp"

using namespace yw;

namespace {

std::vector<CyclePartition> cycle_types(int n) {
  std::vector<CyclePartition> out;
  for (const auto& d : partitions_of(n)) out.emplace_back(d.rows());
  return out;
}

// Size of the centralizer of a permutation of cycle type rho.
double z_rho(const CyclePartition& rho) {
  double z = 1.0;
  std::map<int, int> m;
  for (int p : rho.parts) ++m[p];
  for (auto [p, c] : m) {
    z *= std::pow(p, c);
    for (int i = 2; i <= c; ++i) z *= i;
  }
  return z;
}

}  // namespace

TEST_CASE("Murnaghan-Nakayama small values") {
  CHECK(mn_character(YoungDiagram({2, 1}), CyclePartition({3})) == -1);
  CHECK(mn_character(YoungDiagram({2, 1}), CyclePartition({2, 1})) == 0);
  CHECK(mn_character(YoungDiagram({2, 1}), CyclePartition({1, 1, 1})) == 2);
  CHECK(mn_character(YoungDiagram({1, 1, 1, 1}), CyclePartition({2, 1, 1})) == -1);
  CHECK(mn_character(YoungDiagram({3, 1}), CyclePartition({2, 2})) == -1);
  CHECK_THROWS_AS(mn_character(YoungDiagram({2}), CyclePartition({3})), ConfigError);
}

TEST_CASE("character table orthogonality and dimensions for n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    const auto lams = partitions_of(n);
    const auto rhos = cycle_types(n);
    for (std::size_t a = 0; a < lams.size(); ++a) {
      CHECK(mn_character(lams[a], CyclePartition(std::vector<int>(static_cast<std::size_t>(n), 1))) ==
            oracle::count_tableaux(lams[a]));
      // Sign representation: (1^n) has chi = sign of the class.
      for (std::size_t b = 0; b < lams.size(); ++b) {
        double s = 0.0;
        for (const auto& r : rhos) s += mn_character(lams[a], r) * mn_character(lams[b], r) / z_rho(r);
        CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-9);
      }
    }
    for (const auto& r : rhos) {
      const int sign = ((n - r.length()) % 2) ? -1 : 1;
      CHECK(mn_character(YoungDiagram(std::vector<int>(static_cast<std::size_t>(n), 1)), r) == sign);
    }
  }
}

TEST_CASE("moment-cumulant conversion matches non-crossing partitions") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    CumulantSeq R;
    std::vector<double> r1{0.0};
    for (int j = 1; j <= 8; ++j) {
      R.values.push_back(u(g));
      r1.push_back(R.values.back());
    }
    const auto M = moments_from_cumulants(R, 8);
    for (int k = 0; k <= 8; ++k) CHECK(M[static_cast<std::size_t>(k)] == doctest::Approx(oracle::nc_moment(r1, k)).epsilon(1e-12));
    const auto back = cumulants_from_moments(M);
    for (int j = 1; j <= 8; ++j) CHECK(std::abs(back.at(j) - R.at(j)) < 1e-12);
  }
  const auto cat = moments_from_cumulants(semicircle_cumulants(10), 10);
  const double catalan[] = {1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42};
  for (int k = 0; k <= 10; ++k) CHECK(cat[static_cast<std::size_t>(k)] == catalan[k]);
}

TEST_CASE("free cumulants of (4,2): exact and floating agree") {
  const YoungDiagram d({4, 2});
  const auto e = free_cumulants_exact(d, 6);
  const auto f = free_cumulants(d, 6);
  for (int j = 1; j <= 6; ++j) CHECK(std::abs(f.at(j) - static_cast<double>(e[static_cast<std::size_t>(j - 1)])) < 1e-9);
  CHECK(e[0] == 0);
  CHECK(e[1] == 6);
}

TEST_CASE("Sigma functionals") {
  // Sigma_1 = n and Sigma_rho vanishes when |lambda| < |rho|.
  CHECK(sigma(CyclePartition({1}), YoungDiagram({3, 1})) == doctest::Approx(4.0));
  CHECK(sigma(CyclePartition({3}), YoungDiagram({1, 1})) == 0.0);
  // Sigma_2(lambda) = 2 * sum of contents.
  CHECK(sigma(CyclePartition({2}), YoungDiagram({4, 2})) == doctest::Approx(2.0 * (0 + 1 + 2 + 3 - 1 + 0)));
}

TEST_CASE("stored Kerov polynomials are exact on small diagrams") {
  for (int k = 2; k <= 6; ++k) CHECK(kerov_max_residual(kerov_polynomial(k), 10) == 0);
  CHECK(kerov_polynomial(4).to_string() == "Sigma_4 = R5 + 5R3");
}

TEST_CASE("Kerov fit rediscovers the table") {
  for (int k = 2; k <= 4; ++k) {
    const auto p = fit_kerov_polynomial(k, 10);
    CHECK(p.to_string() == kerov_polynomial(k).to_string());
  }
}

TEST_CASE("Kerov polynomials are homogeneous in the rescaled cumulants") {
  // Top-degree part of Sigma_k is R_{k+1}: on a large diagram Sigma_k/n^{(k+1)/2}
  // approaches R_{k+1} of the rescaled measure.
  const YoungDiagram d({30, 20, 20, 10, 5, 5, 3, 1});
  for (int k = 2; k <= 4; ++k) {
    const double n = static_cast<double>(d.size());
    const double lhs = kerov_sigma(d, k) / std::pow(n, 0.5 * (k + 1));
    const double rhs = scaled_cumulant_estimate(d, k);
    CHECK(std::abs(lhs - rhs) < 2.0 * std::pow(n, -0.5) * (1.0 + std::abs(rhs)) * 10);
  }
}
