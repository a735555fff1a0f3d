// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include <unistd.h>

#include "youngwalk/characters.hpp"
#include "youngwalk/experiments.hpp"
#include "youngwalk/freeprob.hpp"
#include "youngwalk/kernels.hpp"
#include "youngwalk/resind.hpp"
#include "youngwalk/sampling.hpp"
#include "youngwalk/young.hpp"

#ifndef YOUNGWALK_CLI
#error "YOUNGWALK_CLI must name the command-line tool"
#endif

using namespace yw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += (cond ? "" : "[x] ") + what;
  }
};

std::string f(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string f(const char* format, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, format);
  std::vsnprintf(buf, sizeof buf, format, ap);
  va_end(ap);
  return buf;
}

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(dt < budget_s, f("runtime %.3gs < %gs", dt, budget_s));
  if (!o.ok) ++failures;
  std::printf("%s %2d %s: %s\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

ExperimentSpec rectangle_ensemble(long long n, int trajectories, std::uint64_t seed) {
  ExperimentSpec s;
  s.n_grid = {n};
  s.initializer = InitKind::rectangle;
  s.aspect = 2.0;
  s.trajectories = trajectories;
  s.K = 6;
  s.master_seed = seed;
  s.workers = workers();
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  run(1, "transition measure of (4,2)", 1e-3, [](Outcome& o) {
    const auto mu = transition_measure(YoungDiagram({4, 2}));
    const double loc[] = {-2, 1, 4}, wt[] = {5.0 / 9, 2.0 / 9, 2.0 / 9};
    double err = mu.size() == 3 ? 0.0 : 1.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, mu.size()); ++i)
      err = std::max({err, std::abs(mu.atoms()[i].location - loc[i]), std::abs(mu.atoms()[i].weight - wt[i])});
    o.require(err <= 1e-12, f("max atom error %.2e <= 1e-12", err));
  });

  run(2, "small-n chain exactness", 10.0, [](Outcome& o) {
    double stoch = 0, inv = 0, bal = 0, eig = 0;
    for (int n = 1; n <= 8; ++n) {
      const SmallChain c = full_matrix(n);
      const auto N = c.P.rows();
      for (Eigen::Index a = 0; a < N; ++a) stoch = std::max(stoch, std::abs(c.P.row(a).sum() - 1.0));
      inv = std::max(inv, (c.plancherel.transpose() * c.P - c.plancherel.transpose()).cwiseAbs().maxCoeff());
      for (Eigen::Index a = 0; a < N; ++a)
        for (Eigen::Index b = 0; b < N; ++b)
          bal = std::max(bal, std::abs(c.plancherel(a) * c.P(a, b) - c.plancherel(b) * c.P(b, a)));
      for (const char* rho : {"2", "3", "2,2", "4"}) {
        const auto r = CyclePartition::parse(rho);
        if (r.size() <= n) eig = std::max(eig, eigen_identity_residual(c, r));
      }
    }
    o.require(stoch <= 1e-12, f("row sums %.1e", stoch));
    o.require(inv <= 1e-12, f("invariance %.1e", inv));
    o.require(bal <= 1e-12, f("detailed balance %.1e", bal));
    o.require(eig <= 1e-10, f("eigen identity %.1e", eig));
  });

  run(3, "Kerov polynomials vs Murnaghan-Nakayama", 60.0, [](Outcome& o) {
    for (int k = 2; k <= 6; ++k) {
      const auto p = fit_kerov_polynomial(k, 12);
      const Rational r = kerov_max_residual(p, 12);
      o.require(r == 0, f("Sigma_%d residual %s on |lambda| <= 12", k, r.str().c_str()));
    }
  });

  run(4, "propagation identity", 30.0, [](Outcome& o) {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n)
      for (const char* rho : {"2", "3"})
        for (double s : {0.5, 1.0, 2.0}) {
          const auto r = CyclePartition::parse(rho);
          if (r.size() <= n) worst = std::max(worst, propagation_check(n, r, Exponential{1.0}, s));
        }
    o.require(worst <= 1e-10, f("max residual %.2e <= 1e-10", worst));
  });

  run(5, "exponential kernel", 120.0, [](Outcome& o) {
    double fourier = 0.0, zmax = 0.0;
    std::uint64_t stream = 0;
    for (int k : {2, 5, 10})
      for (double s : {10.0, 100.0, 400.0}) {
        const KernelQuery q{k, 100, s, Exponential{1.0}};
        const double exact = std::exp(-s * k / 100.0);
        fourier = std::max(fourier, std::abs(f_fourier_inversion(q).value - exact));
        Rng rng(5, stream++);
        const auto mc = f_monte_carlo(k, 100, s, Exponential{1.0}, 100000, rng);
        zmax = std::max(zmax, std::abs(mc.value - exact) / mc.stderr_);
      }
    o.require(fourier <= 1e-4, f("Fourier max error %.2e <= 1e-4", fourier));
    o.require(zmax <= 4.0, f("Monte Carlo max |z| %.2f <= 4", zmax));
  });

  run(6, "stable machinery", 300.0, [](Outcome& o) {
    Rng rng(6, 0);
    std::vector<double> v(100000);
    for (auto& x : v) x = sample_pausing(OneSidedStable{0.5}, rng);
    const double d = ks_statistic(v, [](double x) { return x <= 0.0 ? 0.0 : std::erfc(std::sqrt(0.5 / x)); });
    const double p = kolmogorov_pvalue(d, v.size());
    o.require(p > 0.01, f("KS p = %.3f > 0.01", p));
    const double g0 = std::max(std::abs(g_alpha(0.0, 0.5) - 1.0), std::abs(g_alpha(0.0, 0.8) - 1.0));
    o.require(g0 <= 1e-8, f("|g(0) - 1| %.1e", g0));
    for (double a : {0.5, 0.8}) {
      const double u = 1e3;
      const double ratio = g_alpha(u, a) * std::pow(u, a) /
                           ((2.0 / std::numbers::pi) * std::tgamma(a) * std::sin(std::numbers::pi * a / 2.0));
      o.require(ratio >= 0.98 && ratio <= 1.02, f("asymptote ratio(alpha=%.1f) %.4f", a, ratio));
    }
    std::uint64_t stream = 1;
    for (double t : {0.25, 1.0}) {
      const double s = t * 1e4;
      const auto quad = f_stable_quadrature({2, 100, s, OneSidedStable{0.5}});
      Rng r(6, stream++);
      const auto mc = f_monte_carlo(2, 100, s, OneSidedStable{0.5}, 100000, r);
      const double z = std::abs(mc.value - quad.value) / mc.stderr_;
      o.require(z <= 4.0, f("t=%.2f quad %.5f mc %.5f |z| %.2f", t, quad.value, mc.value, z));
    }
  });

  run(7, "critical kernel convergence to g_1/2(4t)", 120.0, [](Outcome& o) {
    const double g = g_alpha(4.0, 0.5);
    double prev = INFINITY;
    for (long long n : {100LL, 1000LL, 10000LL}) {
      const double nn = static_cast<double>(n);
      const double gap = std::abs(f_stable_quadrature({2, n, nn * nn, OneSidedStable{0.5}}).value - g);
      o.require(gap < prev, f("n=%lld gap %.3e", n, gap));
      prev = gap;
    }
  });

  run(8, "Markov transform of the semicircle", 60.0, [](Outcome& o) {
    const auto w = markov_inverse(moments_from_cumulants(semicircle_cumulants(16), 16), {-3, 3, 1e-3}, 1e-3);
    const double sup = sup_distance(w, vk_ls_diagram());
    o.require(sup <= 1e-2, f("sup distance %.2e <= 1e-2", sup));
    o.require(std::abs(w.area() - 2.0) <= 2e-2, f("area %.5f", w.area()));
    const double th = theta_energy(vk_ls_diagram());
    o.require(std::abs(th) <= 1e-3, f("Theta(Omega) %.2e", th));
  });

  run(9, "diffusive limit at n = 1e4", 1200.0, [](Outcome& o) {
    auto spec = rectangle_ensemble(10000, 200, 9);
    spec.law = Exponential{1.0};
    spec.time_points = {0.5, 1.0};
    spec.profile_points = 601;
    const auto tab = theorem11_reproduction(spec);
    for (const auto& r : tab.rows) {
      if (r.k != 2 && r.k != 3) continue;
      o.require(r.rel_error <= 0.10 && std::abs(r.z) <= 4.0,
                f("t=%.1f R_%d %.4f vs %.4f rel %.3f z %.2f (10%% = %.1f se)", r.t, r.k + 1, r.empirical, r.predicted,
                  r.rel_error, r.z, 0.1 * std::abs(r.predicted) / r.stderr_));
    }
    for (const auto& p : tab.profiles) o.require(p.sup_distance <= 0.08, f("t=%.1f profile sup %.4f", p.t, p.sup_distance));
  });

  run(10, "anomalous regimes at n = 1e4, alpha = 1/2", 1800.0, [](Outcome& o) {
    auto base = rectangle_ensemble(10000, 200, 10);
    base.law = OneSidedStable{0.5};
    base.scaling = Scaling::anomalous;
    base.time_points = {1.0};
    base.K = 4;

    auto sub = base;
    sub.theta_power = -1.0;
    for (const auto& r : theorem12_reproduction(sub).rows)
      o.require(r.rel_error <= 0.10, f("(i) R_%d %.4f vs %.4f rel %.3f", r.k + 1, r.empirical, r.predicted, r.rel_error));

    auto super = base;
    super.theta_power = 1.0;
    for (const auto& r : theorem12_reproduction(super).rows)
      if (r.k == 2) o.require(std::abs(r.z) <= 4.0, f("(ii) R_3 %.4f se %.4f z %.2f", r.empirical, r.stderr_, r.z));

    auto crit = base;
    const auto tab = theorem12_reproduction(crit);
    for (const auto& r : tab.rows)
      if (r.k == 2)
        o.require(r.rel_error <= 0.10, f("(iii) R_3 %.4f vs %.4f rel %.3f z %.2f (10%% = %.1f se; finite-n mean %.4f)",
                                         r.empirical, r.predicted, r.rel_error, r.z,
                                         0.1 * std::abs(r.predicted) / r.stderr_, tab.r3_finite_n.at(0)));
    for (const auto& d : tab.defects)
      o.require(d.sign_agrees, f("defect %.4f se %.4f vs main term %.4f", d.estimate, d.stderr_, d.predicted));
  });

  run(11, "limit-shape PDE residual", 60.0, [](Outcome& o) {
    PdeGrid g;
    g.t = {0.25, 0.5, 1.0, 2.0};
    for (double x = -3; x <= 3.001; x += 0.5)
      for (double y : {0.5, 1.0, 2.0}) g.z.emplace_back(x, y);
    const auto R0 = rectangle_limit_cumulants(2.0, 64);
    const double r1 = pde_residual(R0, 1.0, g, 2e-3), r2 = pde_residual(R0, 1.0, g, 1e-3);
    o.require(r2 <= 1e-4, f("residual %.2e <= 1e-4", r2));
    o.require(r1 / r2 > 3.0 && r1 / r2 < 5.0, f("halving ratio %.2f ~ 4", r1 / r2));
  });

  run(12, "simulate is independent of --workers", 300.0, [](Outcome& o) {
    const fs::path dir = fs::temp_directory_path() / ("youngwalk_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    {
      std::ofstream cfg(dir / "run.cfg");
      cfg << "n_grid = 500, 2000\ninitializer = rectangle\naspect = 2\nlaw = exponential:1\n"
             "time_points = 0.5, 1\ntrajectories = 24\nK = 6\nprofile_points = 41\n";
    }
    const std::string cli = YOUNGWALK_CLI;
    auto sim = [&](int w, const char* out) {
      const std::string cmd = "\"" + cli + "\" simulate --spec \"" + (dir / "run.cfg").string() + "\" --seed 12 --workers " +
                              std::to_string(w) + " --out \"" + (dir / out).string() + "\"";
      return std::system(cmd.c_str());
    };
    o.require(sim(1, "w1") == 0 && sim(4, "w4") == 0, "both runs exit 0");
    for (const char* file : {"ensemble.csv", "profiles.csv"}) {
      const std::string a = slurp(dir / "w1" / file), b = slurp(dir / "w4" / file);
      o.require(!a.empty() && a == b, f("%s byte-identical (%zu bytes)", file, a.size()));
    }
    fs::remove_all(dir);
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
