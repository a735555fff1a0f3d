#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "youngwalk/characters.hpp"
#include "youngwalk/error.hpp"
#include "youngwalk/freeprob.hpp"

using namespace yw;

namespace {

CumulantSeq cumulants_of(const std::vector<double>& M) { return cumulants_from_moments(MomentSeq{M}); }

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("limit shape values") {
  CHECK(vk_ls(0.0) == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(vk_ls(2.0) == 2.0);
  CHECK(vk_ls(-2.0) == 2.0);
  CHECK(vk_ls(1.0) == doctest::Approx(2.0 / std::numbers::pi * (std::numbers::pi / 6 + std::sqrt(3.0))));
  CHECK(vk_ls(5.0) == 5.0);
  const auto om = vk_ls_diagram();
  CHECK(om.is_valid());
  CHECK(std::abs(om.area() - 2.0) < 1e-6);
  CHECK(sup_distance(om, ContinuousDiagram()) == doctest::Approx(4.0 / std::numbers::pi));
  // Its transition measure is the standard semicircle.
  const auto M = transition_moments(om, 6);
  CHECK(std::abs(M[2] - 1.0) < 1e-6);
  CHECK(std::abs(M[4] - 2.0) < 1e-5);
  CHECK(std::abs(M[6] - 5.0) < 1e-5);
}

TEST_CASE("free convolution") {
  const auto sc = semicircle_cumulants(6);
  const auto two = free_convolve(sc, sc);
  CHECK(two.at(2) == 2.0);
  CHECK(two.at(4) == 0.0);
  const CumulantSeq delta{std::vector<double>(6, 0.0)};
  CHECK(free_convolve(sc, delta).values == sc.values);
  // Symmetric Bernoulli boxplus itself is the arcsine law on [-2, 2].
  const auto bern = cumulants_of({1, 0, 1, 0, 1, 0, 1, 0, 1});
  const auto M = moments_from_cumulants(free_convolve(bern, bern), 8);
  for (int k = 0; k <= 8; k += 2) CHECK(std::abs(M[static_cast<std::size_t>(k)] - binom(k, k / 2)) < 1e-10);
  CHECK(std::abs(M[3]) < 1e-12);
}

TEST_CASE("free compression") {
  const auto sc = semicircle_cumulants(6);
  CHECK(free_compress(sc, 1.0).values == sc.values);
  CHECK(free_compress(sc, 0.3).at(2) == doctest::Approx(0.3));
  CHECK_THROWS_AS(free_compress(sc, 0.0), ConfigError);
  CHECK_THROWS_AS(free_compress(sc, 1.5), ConfigError);
  const auto R0 = rectangle_limit_cumulants(2.0, 8);
  const double c = 0.4;
  CHECK(free_convolve(free_compress(R0, c), free_compress(sc, 1 - c)).at(2) == doctest::Approx(1.0));
}

TEST_CASE("cumulant evolution equals the compression composition") {
  const auto R0 = rectangle_limit_cumulants(2.0, 8);
  const auto a = omega_t_cumulants(R0, 0.7, 1.0), b = omega_t_composition(R0, 0.7, 1.0);
  for (int j = 1; j <= 8; ++j) CHECK(std::abs(a.at(j) - b.at(j)) < 1e-12);
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int rep = 0; rep < 30; ++rep) {
    CumulantSeq R{{0.0, 1.0}};
    const int K = 3 + static_cast<int>(g() % 8);
    for (int j = 3; j <= K; ++j) R.values.push_back(u(g));
    for (double t : {0.1, 1.0, 5.0}) {
      const auto x = omega_t_cumulants(R, t, 1.3), y = omega_t_composition(R, t, 1.3);
      for (int j = 1; j <= K; ++j) CHECK(std::abs(x.at(j) - y.at(j)) < 1e-12);
    }
  }
  const auto z = omega_t_cumulants(R0, 0.0, 1.0);
  CHECK(z.values == R0.values);
  const auto inf = omega_t_cumulants(R0, 200.0, 1.0);
  for (int j = 3; j <= 8; ++j) CHECK(std::abs(inf.at(j)) < 1e-15);
  CHECK(inf.at(2) == 1.0);
}

TEST_CASE("rectangle cumulants") {
  const auto R = rectangle_limit_cumulants(2.0, 6);
  CHECK(std::abs(R.at(3) + 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(R.at(4) + 0.5) < 1e-15);
  const auto direct = cumulants_from_moments(measure_moments(rectangle_limit_measure(2.0), 6));
  for (int j = 1; j <= 6; ++j) CHECK(std::abs(direct.at(j) - R.at(j)) < 1e-13);
}

TEST_CASE("Jacobi coefficients") {
  const auto sc = jacobi_coefficients(moments_from_cumulants(semicircle_cumulants(16), 16));
  CHECK_FALSE(sc.finite);
  for (double a : sc.a) CHECK(std::abs(a) < 1e-14);
  for (std::size_t j = 1; j < sc.b2.size(); ++j) CHECK(std::abs(sc.b2[j] - 1.0) < 1e-12);
  const auto two = jacobi_coefficients(MomentSeq{{1, 0, 1, 0, 1}});
  CHECK(two.finite);
  CHECK(two.a.size() == 2);
  CHECK_THROWS_WITH_AS(jacobi_coefficients(MomentSeq{{1, 0, -1}}), doctest::Contains("invalid moment sequence"), NumericError);
  const auto [lo, hi] = sc.support_enclosure();
  CHECK(lo == doctest::Approx(-2.0));
  CHECK(hi == doctest::Approx(2.0));
}

TEST_CASE("continued fraction agrees with the subordination solution") {
  const auto R0 = rectangle_limit_cumulants(2.0, 64);
  const auto mu0 = rectangle_limit_measure(2.0);
  for (double t : {0.25, 0.5, 1.0, 3.0}) {
    const auto J = evolved_jacobi_coefficients(R0, t, 1.0, 48);
    for (double x : {-2.5, -1.0, 0.0, 0.7, 2.2})
      for (double y : {0.5, 1.0}) {
        const std::complex<double> z(x, y);
        CHECK(std::abs(stieltjes(J, z) - evolved_stieltjes(mu0, std::exp(-t), z)) < 1e-7);
      }
  }
}

TEST_CASE("Markov inverse fixtures") {
  const auto om = vk_ls_diagram();
  const auto w = markov_inverse(moments_from_cumulants(semicircle_cumulants(16), 16), {-3, 3, 1e-3}, 1e-3);
  CHECK(sup_distance(w, om) <= 1e-2);
  CHECK(std::abs(w.area() - 2.0) < 2e-2);
  CHECK(w.is_valid());

  const auto flat = markov_inverse(MomentSeq{{1, 0, 0, 0, 0}}, {-3, 3, 1e-3}, 1e-3);
  CHECK(sup_distance(flat, ContinuousDiagram()) < 1e-9);

  const auto box = markov_inverse(MomentSeq{{1, 0, 1, 0, 1}}, {-3, 3, 1e-3}, 1e-3);
  CHECK(sup_distance(box, profile(YoungDiagram({1}))) < 1e-2);
  CHECK(std::abs(box.area() - 2.0) < 2e-2);

  CHECK_THROWS_AS(markov_inverse(MomentSeq{{1, 0, 1, 0, 1}}, {-0.5, 3, 1e-3}, 1e-3), NumericError);
}

TEST_CASE("round trip through the Markov inverse") {
  const auto R0 = rectangle_limit_cumulants(2.0, 48);
  std::vector<CumulantSeq> fixtures{semicircle_cumulants(16), omega_t_cumulants(R0, 0.5, 1.0), omega_t_cumulants(R0, 2.0, 1.0)};
  for (const auto& R : fixtures) {
    const auto w = markov_inverse(R, {-4, 4, 1e-3}, 1e-3, 40);
    const auto got = transition_moments(w, 6);
    const auto want = moments_from_cumulants(R, 6);
    for (int k = 2; k <= 6; ++k) CHECK(std::abs(got[static_cast<std::size_t>(k)] - want[static_cast<std::size_t>(k)]) < 2e-2);
    CHECK(std::abs(w.area() - 2.0) < 2e-2);
  }
}

TEST_CASE("omega_t approaches Omega monotonically for the rectangle fixture") {
  const auto R0 = rectangle_limit_cumulants(2.0, 48);
  const auto om = vk_ls_diagram();
  double prev = 1e9;
  for (double t : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    const auto w = markov_inverse(omega_t_cumulants(R0, t, 1.0), {-4, 4, 1e-3}, 1e-3, 40);
    const double d = sup_distance(w, om);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("PDE residual") {
  PdeGrid g;
  g.t = {0.25, 0.5, 1.0, 2.0};
  for (double x = -3; x <= 3.001; x += 0.5)
    for (double y : {0.5, 1.0, 2.0}) g.z.emplace_back(x, y);
  CHECK(pde_residual(semicircle_cumulants(12), 1.0, g, 1e-3, 12) <= 1e-6);
  const auto R0 = rectangle_limit_cumulants(2.0, 64);
  const double r1 = pde_residual(R0, 1.0, g, 2e-3);
  const double r2 = pde_residual(R0, 1.0, g, 1e-3);
  CHECK(r2 <= 1e-4);
  CHECK(r1 / r2 > 3.0);
  CHECK(r1 / r2 < 5.0);
}

TEST_CASE("logarithmic energy") {
  CHECK(std::abs(theta_energy(vk_ls_diagram())) < 1e-3);
  CHECK(theta_energy(ContinuousDiagram()) == doctest::Approx(1.0).epsilon(1e-14));
  // Any other diagram of area 2 has positive energy.
  CHECK(theta_energy(rescaled_profile(YoungDiagram({2, 2}), 4)) > 0.0);
}

TEST_CASE("exports") {
  std::ostringstream a;
  write_cumulants_csv(a, semicircle_cumulants(3));
  CHECK(a.str() == "k,R_k\n1,0\n2,1\n3,0\n");
  const auto r = markov_inverse_detailed(jacobi_coefficients(MomentSeq{{1, 0, 1}}), {-3, 3, 0.5}, 0.5);
  std::ostringstream b;
  write_shape_csv(b, r);
  CHECK(b.str().rfind("x,omega_x,sigma_prime_x\n", 0) == 0);
}
