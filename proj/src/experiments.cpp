#include "youngwalk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <Eigen/Dense>

#include "youngwalk/error.hpp"
#include "youngwalk/resind.hpp"

namespace yw {

namespace {

double stable_alpha(const PausingLaw& law) {
  const auto* st = std::get_if<OneSidedStable>(&law);
  if (!st) throw ConfigError("anomalous scaling needs a one-sided stable pausing law");
  return st->alpha;
}

std::vector<YoungDiagram> load_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open initializer file '" + path + "'");
  auto ds = read_partitions(in);
  if (ds.empty()) throw ConfigError("initializer file '" + path + "' holds no partitions");
  return ds;
}

std::vector<YoungDiagram> file_diagrams_of_size(const std::vector<YoungDiagram>& all, long long n,
                                                const std::string& path) {
  std::vector<YoungDiagram> out;
  for (const auto& d : all)
    if (d.size() == n) out.push_back(d);
  if (out.empty()) throw ConfigError("initializer file '" + path + "' has no partition of size " + std::to_string(n));
  return out;
}

CumulantSeq rescaled_cumulants(const YoungDiagram& d, long long n, int K) {
  const auto mu = transition_measure(d).scaled(1.0 / std::sqrt(static_cast<double>(n)));
  return cumulants_from_moments(measure_moments(mu, K));
}

struct Observation {
  std::vector<double> M, R, profile;
  long long jumps = 0;
};

MeanVar mean_var(const std::vector<double>& v) {
  MeanVar r;
  const double N = static_cast<double>(v.size());
  for (double x : v) r.mean += x;
  r.mean /= N;
  if (v.size() > 1) {
    for (double x : v) r.var += (x - r.mean) * (x - r.mean);
    r.var /= N - 1.0;
  }
  r.stderr_ = std::sqrt(r.var / N);
  return r;
}

double z_score(double emp, double se, double pred) {
  if (se > 0.0) return (emp - pred) / se;
  return emp == pred ? 0.0 : std::copysign(HUGE_VAL, emp - pred);
}

CumulantRow make_row(const CellStats& c, int k, double predicted) {
  CumulantRow r;
  r.n = c.n;
  r.t = c.t;
  r.k = k;
  const auto& mv = c.cumulants[static_cast<std::size_t>(k)];  // R_{k+1}
  r.empirical = mv.mean;
  r.stderr_ = mv.stderr_;
  r.predicted = predicted;
  r.z = z_score(mv.mean, mv.stderr_, predicted);
  r.rel_error = predicted != 0.0 ? std::abs(mv.mean - predicted) / std::abs(predicted) : std::abs(mv.mean);
  return r;
}

}  // namespace

void ExperimentSpec::validate() const {
  std::string errs;
  auto bad = [&](const std::string& m) { errs += (errs.empty() ? "" : "; ") + m; };
  if (n_grid.empty()) bad("n_grid: empty");
  for (long long n : n_grid)
    if (n < 1) bad("n_grid: sizes must be >= 1");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) bad("n_grid: must be strictly increasing");
  if (initializer == InitKind::rectangle && !(aspect > 0.0)) bad("aspect: must be positive");
  if (initializer == InitKind::file && init_file.empty()) bad("init_file: required for file initializer");
  try {
    yw::validate(law);
  } catch (const ConfigError& e) {
    bad(std::string("law: ") + e.what());
  }
  if (time_points.empty()) bad("time_points: empty");
  for (double t : time_points)
    if (!(t >= 0.0) || !std::isfinite(t)) bad("time_points: must be finite and >= 0");
  for (std::size_t i = 1; i < time_points.size(); ++i)
    if (time_points[i] < time_points[i - 1]) bad("time_points: must be nondecreasing");
  if (scaling == Scaling::anomalous) {
    if (!std::holds_alternative<OneSidedStable>(law)) bad("scaling: anomalous needs a stable law");
    if (!(theta_coeff > 0.0)) bad("theta_coeff: must be positive");
  }
  if (trajectories < 1) bad("trajectories: must be >= 1");
  if (K < 2 || K > 40) bad("K: must be in 2..40");
  if (workers < 1) bad("workers: must be >= 1");
  if (profile_points < 0 || profile_points == 1) bad("profile_points: 0 or >= 2");
  if (profile_points > 0 && !(profile_span > 0.0)) bad("profile_span: must be positive");
  if (!errs.empty()) throw ConfigError("invalid experiment spec: " + errs);
}

double ExperimentSpec::theta_ratio(long long n) const {
  const double nd = static_cast<double>(n);
  double r = theta_coeff * std::pow(nd, theta_power);
  if (theta_log_power != 0.0) r *= std::pow(std::log(nd), theta_log_power);
  return r;
}

double ExperimentSpec::time_scale(long long n) const {
  const double nd = static_cast<double>(n);
  if (scaling == Scaling::diffusive) return nd;
  return theta_ratio(n) * std::pow(nd, 1.0 / stable_alpha(law));
}

Regime ExperimentSpec::regime() const {
  const double lead = theta_power != 0.0 ? theta_power : theta_log_power;
  if (lead < 0.0) return Regime::sub;
  if (lead > 0.0) return Regime::super;
  return Regime::critical;
}

ContinuousDiagram CellStats::mean_profile() const {
  if (profile_x.empty()) throw ConfigError("no profile was recorded (profile_points = 0)");
  return ContinuousDiagram(profile_x, profile_mean);
}

const CellStats& EnsembleStats::at(long long n, double t) const {
  for (const auto& c : cells)
    if (c.n == n && c.t == t) return c;
  throw ConfigError("no ensemble cell for n = " + std::to_string(n) + ", t = " + std::to_string(t));
}

CumulantSeq initial_cumulants(const ExperimentSpec& spec, long long n, int K) {
  switch (spec.initializer) {
    case InitKind::plancherel: return semicircle_cumulants(K);
    case InitKind::rectangle: return rescaled_cumulants(rectangle_initializer(n, spec.aspect), n, K);
    case InitKind::file: {
      const auto ds = file_diagrams_of_size(load_partition_file(spec.init_file), n, spec.init_file);
      CumulantSeq R{std::vector<double>(static_cast<std::size_t>(K), 0.0), std::nullopt};
      for (const auto& d : ds) {
        const auto r = rescaled_cumulants(d, n, K);
        for (int j = 1; j <= K; ++j) R.values[static_cast<std::size_t>(j - 1)] += r.at(j) / static_cast<double>(ds.size());
      }
      return R;
    }
  }
  return {};
}

EnsembleStats run_ensemble(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<YoungDiagram> file_all;
  if (spec.initializer == InitKind::file) file_all = load_partition_file(spec.init_file);

  std::vector<double> grid_x;
  for (int i = 0; i < spec.profile_points; ++i)
    grid_x.push_back(-spec.profile_span + 2.0 * spec.profile_span * i / (spec.profile_points - 1));

  EnsembleStats out;
  out.spec = spec;
  const std::size_t T = spec.time_points.size();
  const int K = spec.K;

  for (std::size_t ni = 0; ni < spec.n_grid.size(); ++ni) {
    const long long n = spec.n_grid[ni];
    const double scale = spec.time_scale(n);
    std::vector<YoungDiagram> file_n;
    if (spec.initializer == InitKind::file) file_n = file_diagrams_of_size(file_all, n, spec.init_file);
    const YoungDiagram rect = spec.initializer == InitKind::rectangle ? rectangle_initializer(n, spec.aspect)
                                                                      : YoungDiagram{};

    // results[traj][time]
    std::vector<std::vector<Observation>> results(static_cast<std::size_t>(spec.trajectories));

    auto run_one = [&](int idx) {
      Rng rng(spec.master_seed, (static_cast<std::uint64_t>(ni) << 32) | static_cast<std::uint64_t>(idx));
      YoungDiagram d0;
      switch (spec.initializer) {
        case InitKind::plancherel: d0 = plancherel_growth(n, rng); break;
        case InitKind::rectangle: d0 = rect; break;
        case InitKind::file: d0 = file_n[static_cast<std::size_t>(idx) % file_n.size()]; break;
      }
      RenewalClock clock(spec.law);
      ResIndWalker walker(std::move(d0));
      long long done = 0;
      auto& obs = results[static_cast<std::size_t>(idx)];
      obs.resize(T);
      for (std::size_t ti = 0; ti < T; ++ti) {
        const long long jumps = clock.advance_to(spec.time_points[ti] * scale, rng);
        walker.steps(jumps - done, rng);
        done = jumps;
        const auto& d = walker.diagram();
        const auto mu = transition_measure(d).scaled(1.0 / std::sqrt(static_cast<double>(n)));
        auto M = measure_moments(mu, K);
        if (std::abs(M[2] - 1.0) > 1e-9)
          throw NumericError("second moment of the rescaled transition measure is " + std::to_string(M[2]));
        obs[ti].R = cumulants_from_moments(M).values;
        obs[ti].M = std::move(M.values);
        obs[ti].jumps = jumps;
        if (!grid_x.empty()) {
          const auto p = rescaled_profile(d, n);
          obs[ti].profile.resize(grid_x.size());
          for (std::size_t g = 0; g < grid_x.size(); ++g) obs[ti].profile[g] = p(grid_x[g]);
        }
      }
    };

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (int idx = next++; idx < spec.trajectories; idx = next++) {
        try {
          run_one(idx);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = spec.trajectories;
        }
      }
    };
    const int nw = std::min(spec.workers, spec.trajectories);
    if (nw <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Reduction in trajectory order.
    const double nd = static_cast<double>(n);
    for (std::size_t ti = 0; ti < T; ++ti) {
      CellStats c;
      c.n = n;
      c.t = spec.time_points[ti];
      c.s = c.t * scale;
      c.count = spec.trajectories;
      std::vector<double> col(static_cast<std::size_t>(spec.trajectories));
      auto column = [&](auto get) {
        for (int i = 0; i < spec.trajectories; ++i) col[static_cast<std::size_t>(i)] = get(results[static_cast<std::size_t>(i)][ti]);
        return mean_var(col);
      };
      for (int k = 0; k <= K; ++k) c.moments.push_back(column([k](const Observation& o) { return o.M[static_cast<std::size_t>(k)]; }));
      for (int j = 1; j <= K; ++j) c.cumulants.push_back(column([j](const Observation& o) { return o.R[static_cast<std::size_t>(j - 1)]; }));
      for (int a = 2; a <= 4; ++a)
        for (int b = 2; b <= 4; ++b)
          c.moment_products.push_back(
              a <= K && b <= K ? column([a, b](const Observation& o) {
                                   return o.M[static_cast<std::size_t>(a)] * o.M[static_cast<std::size_t>(b)];
                                 }).mean
                               : 0.0);
      c.mean_jumps = column([](const Observation& o) { return static_cast<double>(o.jumps); }).mean;

      // Sigma_2 = R_3 and Sigma_3 = R_4 + R_2 (unscaled); with
      // Sigma_2^2 = Sigma_22 + 4 Sigma_3 + 2 n(n-1) the defect is
      // Var(R~_3) - 4 E[R~_4]/n - 4/n^2 - 2(n-1)/n^2 in rescaled cumulants.
      if (K >= 4) {
        const MeanVar r3 = c.cumulants[2];
        const double r4 = c.cumulants[3].mean;
        c.defect = r3.var - 4.0 * r4 / nd - 4.0 / (nd * nd) - 2.0 * (nd - 1.0) / (nd * nd);
        const MeanVar sq = column([&](const Observation& o) { return std::pow(o.R[2] - r3.mean, 2); });
        c.defect_stderr = sq.stderr_;
      }

      if (!grid_x.empty()) {
        c.profile_x = grid_x;
        c.profile_mean.assign(grid_x.size(), 0.0);
        for (int i = 0; i < spec.trajectories; ++i)
          for (std::size_t g = 0; g < grid_x.size(); ++g)
            c.profile_mean[g] += results[static_cast<std::size_t>(i)][ti].profile[g];
        for (auto& v : c.profile_mean) v /= spec.trajectories;
      }
      out.cells.push_back(std::move(c));
    }
  }
  return out;
}

double propagation_check(int n, const CyclePartition& rho, const PausingLaw& law, double s, const YoungDiagram& lambda0) {
  if (n < 2 || n > 8) throw ConfigError("propagation_check supports 2 <= n <= 8");
  if (rho.size() > n) throw ConfigError("cycle type larger than n");
  if (!(s >= 0.0)) throw ConfigError("propagation_check needs s >= 0");
  yw::validate(law);
  if (std::holds_alternative<OneSidedStable>(law))
    throw ConfigError("propagation_check supports exponential and deterministic unit pauses");

  const SmallChain chain = full_matrix(n);
  YoungDiagram start = lambda0;
  if (start.empty()) start = YoungDiagram(std::vector<int>{n - 1, 1});
  if (start.size() != n) throw ConfigError("initial diagram must have size n");
  const auto N = static_cast<Eigen::Index>(chain.states.size());
  Eigen::RowVectorXd m0 = Eigen::RowVectorXd::Zero(N);
  m0(chain.index_of(start)) = 1.0;

  const int k = rho.size() - rho.ones();
  const double q = 1.0 - static_cast<double>(k) / n;
  Eigen::RowVectorXd ms = Eigen::RowVectorXd::Zero(N);
  double f = 1.0;

  if (const auto* e = std::get_if<Exponential>(&law)) {
    // Poisson(s/m) mixture of matrix powers, summed until the tail is < 1e-12.
    const double lam = s / e->mean;
    f = std::exp(-lam * (1.0 - q));
    Eigen::RowVectorXd v = m0;
    double cum = 0.0;
    long long j = 0;
    const long long cap = 1000000;
    double logw = -lam;
    for (; j <= cap; ++j) {
      const double w = std::exp(logw);
      ms += w * v;
      cum += w;
      if (1.0 - cum < 1e-12 && j > lam) break;
      v = v * chain.P;
      logw += std::log(lam) - std::log(static_cast<double>(j + 1));
    }
    if (j > cap) throw NumericError("Poisson series did not reach tail < 1e-12 within 1e6 terms");
  } else {
    // N_s = #{j >= 1 : j < s}.
    const long long jumps = s > 0.0 ? static_cast<long long>(std::ceil(s)) - 1 : 0;
    ms = m0;
    for (long long j = 0; j < jumps; ++j) ms = ms * chain.P;
    f = std::pow(q, static_cast<double>(jumps));
  }
  const Eigen::VectorXd sig = chain.sigma_vector(rho);
  return std::abs(ms.dot(sig) - f * m0.dot(sig));
}

ConcentrationReport concentration_report(const EnsembleStats& stats, const CumulantSeq& reference) {
  const auto& spec = stats.spec;
  if (spec.n_grid.size() < 2) throw ConfigError("need grid: concentration_report needs at least two n values");
  ConcentrationReport rep;
  rep.n_grid = spec.n_grid;
  const int K = spec.K;
  const MomentSeq ref = moments_from_cumulants(reference, K);
  for (long long n : spec.n_grid)
    for (double t : spec.time_points) {
      const auto& c = stats.at(n, t);
      double d = 0.0;
      for (int k = 0; k <= K; ++k) d = std::max(d, std::abs(c.moments[static_cast<std::size_t>(k)].mean - ref[static_cast<std::size_t>(k)]));
      rep.moment_distance.push_back(d);
    }
  for (double t : spec.time_points)
    for (int a = 2; a <= std::min(4, K); ++a)
      for (int b = a; b <= std::min(4, K); ++b) {
        CovarianceTrend tr;
        tr.t = t;
        tr.k1 = a;
        tr.k2 = b;
        for (long long n : spec.n_grid) {
          const auto& c = stats.at(n, t);
          const double prod = c.moment_products[static_cast<std::size_t>((a - 2) * 3 + (b - 2))];
          tr.abs_cov.push_back(std::abs(prod - c.moments[static_cast<std::size_t>(a)].mean * c.moments[static_cast<std::size_t>(b)].mean));
        }
        for (std::size_t i = 1; i < tr.abs_cov.size(); ++i)
          if (tr.abs_cov[i] > tr.abs_cov[i - 1] + 1e-15) tr.non_increasing = false;
        rep.all_non_increasing = rep.all_non_increasing && tr.non_increasing;
        rep.trends.push_back(std::move(tr));
      }
  return rep;
}

Theorem11Table theorem11_from_stats(const EnsembleStats& stats, int moment_order) {
  const auto& spec = stats.spec;
  const auto* e = std::get_if<Exponential>(&spec.law);
  if (!e || spec.scaling != Scaling::diffusive)
    throw ConfigError("diffusive cumulant table needs exponential pauses and diffusive scaling");
  Theorem11Table tab;
  for (long long n : spec.n_grid) {
    const CumulantSeq R0 = initial_cumulants(spec, n, std::max(moment_order, spec.K));
    for (double t : spec.time_points) {
      const auto& c = stats.at(n, t);
      for (int k = 2; k + 1 <= spec.K; ++k)
        tab.rows.push_back(make_row(c, k, R0.at(k + 1) * std::exp(-k * t / e->mean)));
      if (!c.profile_x.empty()) {
        const auto Rt = omega_t_cumulants(R0, t, e->mean);
        const auto shape = markov_inverse(Rt, InversionGrid{}, 1e-3, moment_order);
        tab.profiles.push_back({n, t, sup_distance(c.mean_profile(), shape)});
      }
    }
  }
  return tab;
}

Theorem11Table theorem11_reproduction(const ExperimentSpec& spec, int moment_order) {
  return theorem11_from_stats(run_ensemble(spec), moment_order);
}

Theorem12Table theorem12_from_stats(const EnsembleStats& stats) {
  const auto& spec = stats.spec;
  if (spec.scaling != Scaling::anomalous) throw ConfigError("anomalous cumulant table needs anomalous scaling");
  const double alpha = stable_alpha(spec.law);
  Theorem12Table tab;
  tab.regime = spec.regime();
  for (long long n : spec.n_grid) {
    const CumulantSeq R0 = initial_cumulants(spec, n, spec.K);
    const double c_n = spec.theta_ratio(n);
    for (double t : spec.time_points) {
      const auto& c = stats.at(n, t);
      for (int k = 2; k + 1 <= spec.K; ++k) {
        double factor = 0.0;
        switch (tab.regime) {
          case Regime::sub: factor = 1.0; break;
          case Regime::super: factor = 0.0; break;
          case Regime::critical: factor = g_alpha(t * c_n * std::pow(static_cast<double>(k), 1.0 / alpha), alpha); break;
        }
        tab.rows.push_back(make_row(c, k, R0.at(k + 1) * factor));
      }
      tab.r3_finite_n.push_back(
          R0.at(3) * (c.s == 0.0 ? 1.0 : f_stable_quadrature({2, n, c.s, spec.law}).value));
      double main = 0.0;
      if (tab.regime == Regime::critical && t > 0.0) main = factorization_defect_main_term(2, 1, t * c_n, alpha);
      const double predicted = main * R0.at(3) * R0.at(3);
      const bool agree = predicted == 0.0 ? std::abs(c.defect) <= 4.0 * c.defect_stderr
                                          : (c.defect > 0.0) == (predicted > 0.0);
      tab.defects.push_back({n, t, c.defect, c.defect_stderr, predicted, agree});
    }
  }
  return tab;
}

Theorem12Table theorem12_reproduction(const ExperimentSpec& spec) { return theorem12_from_stats(run_ensemble(spec)); }

}  // namespace yw
