// youngwalk: sampling, simulation, limit shapes and scaling kernels for the
// restriction-induction walk on Young diagrams.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "youngwalk/config.hpp"
#include "youngwalk/error.hpp"
#include "youngwalk/experiments.hpp"
#include "youngwalk/freeprob.hpp"
#include "youngwalk/io.hpp"
#include "youngwalk/kernels.hpp"
#include "youngwalk/resind.hpp"
#include "youngwalk/sampling.hpp"

namespace fs = std::filesystem;
using namespace yw;

namespace {

struct RunConfig {
  std::string spec_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string format = "csv";
};

fs::path prepare_out(const RunConfig& rc) {
  std::error_code ec;
  fs::create_directories(rc.out_dir, ec);
  const fs::path dir(rc.out_dir);
  const fs::path probe = dir / ".youngwalk_write_test";
  {
    std::ofstream t(probe);
    if (!t) throw ConfigError("output directory '" + rc.out_dir + "' is not writable");
  }
  fs::remove(probe, ec);
  return dir;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  return f;
}

std::uint64_t require_seed(const RunConfig& rc, const Config* cfg) {
  if (rc.seed) return *rc.seed;
  if (cfg && cfg->has("seed")) return cfg->get_u64("seed", 0);
  throw ConfigError("seed is mandatory: pass --seed or set 'seed' in the spec");
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------- sample

int cmd_sample(const RunConfig& rc, long long n, long long count, const std::string& init) {
  if (n < 1) throw ConfigError("n: must be >= 1");
  if (count < 0) throw ConfigError("count: must be >= 0");
  Config params;
  params.set("n", std::to_string(n));
  params.set("count", std::to_string(count));
  params.set("initializer", init);
  const std::uint64_t seed = require_seed(rc, nullptr);
  std::optional<double> aspect;
  if (init.rfind("rectangle:", 0) == 0) {
    aspect = std::stod(init.substr(10));
    if (!(*aspect > 0.0)) throw ConfigError("initializer: aspect must be positive");
  } else if (init != "plancherel") {
    throw ConfigError("initializer: '" + init + "' (plancherel, rectangle:<aspect>)");
  }
  const auto dir = prepare_out(rc);

  std::vector<YoungDiagram> out(static_cast<std::size_t>(count));
  std::atomic<long long> next{0};
  auto work = [&] {
    for (long long i = next++; i < count; i = next++) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      out[static_cast<std::size_t>(i)] = aspect ? rectangle_initializer(n, *aspect) : plancherel_growth(n, rng);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < rc.workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  auto f = open_out(dir / "partitions.txt");
  write_meta_comment(f, {"sample", params.hash(), seed});
  write_partitions(f, out);
  return 0;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const RunConfig& rc) {
  Config cfg = Config::load(rc.spec_path);
  const std::uint64_t seed = require_seed(rc, &cfg);
  cfg.set("seed", std::to_string(seed));
  ExperimentSpec spec = experiment_spec_from_config(cfg);
  spec.workers = rc.workers;
  const auto dir = prepare_out(rc);
  // The worker count does not enter the hash: it cannot change results.
  const RunMeta meta{"simulate", cfg.hash(), seed};

  const EnsembleStats stats = run_ensemble(spec);
  {
    auto f = open_out(dir / "ensemble.csv");
    write_meta_comment(f, meta);
    write_ensemble_csv(f, stats);
  }
  if (spec.profile_points > 0) {
    auto f = open_out(dir / "profiles.csv");
    write_meta_comment(f, meta);
    write_mean_profiles_csv(f, stats);
  }
  if (rc.format == "json") {
    nlohmann::json extra = nlohmann::json::object();
    if (std::holds_alternative<Exponential>(spec.law) && spec.scaling == Scaling::diffusive && spec.K >= 3) {
      const auto tab = theorem11_from_stats(stats);
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : tab.rows)
        rows.push_back({{"n", r.n}, {"t", r.t}, {"k", r.k}, {"empirical", r.empirical}, {"stderr", r.stderr_},
                        {"predicted", r.predicted}, {"z", r.z}});
      extra["diffusive_cumulants"] = rows;
    } else if (spec.scaling == Scaling::anomalous && spec.K >= 4) {
      const auto tab = theorem12_from_stats(stats);
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : tab.rows)
        rows.push_back({{"n", r.n}, {"t", r.t}, {"k", r.k}, {"empirical", r.empirical}, {"stderr", r.stderr_},
                        {"predicted", r.predicted}, {"z", r.z}});
      extra["anomalous_cumulants"] = {{"regime", to_string(tab.regime)}, {"rows", rows}};
    }
    auto f = open_out(dir / "summary.json");
    f << ensemble_summary_json(stats, meta, extra.empty() ? "" : extra.dump());
  }
  return 0;
}

// ---------------------------------------------------------------- limit-shape

int cmd_limit_shape(const RunConfig& rc) {
  const Config cfg = Config::load(rc.spec_path);
  const LimitShapeJob job = limit_shape_job_from_config(cfg);
  const auto dir = prepare_out(rc);
  const RunMeta meta{"limit-shape", cfg.hash(), rc.seed.value_or(0)};
  std::vector<PlotSeries> series;
  nlohmann::json summary = nlohmann::json::array();
  for (std::size_t i = 0; i < job.time_points.size(); ++i) {
    const double t = job.time_points[i];
    const CumulantSeq Rt = omega_t_cumulants(job.spec.R0, t, job.spec.mean);
    const auto J = jacobi_coefficients(Rt, job.spec.moment_order);
    const auto res = markov_inverse_detailed(J, job.spec.grid, job.spec.eps);
    const std::string shape_name = "shape_" + std::to_string(i) + ".csv";
    {
      auto f = open_out(dir / shape_name);
      write_meta_comment(f, meta);
      f << "# t " << fmt("%.17g", t) << "\n";
      write_shape_csv(f, res);
    }
    {
      auto f = open_out(dir / ("cumulants_" + std::to_string(i) + ".csv"));
      write_meta_comment(f, meta);
      f << "# t " << fmt("%.17g", t) << "\n";
      CumulantSeq head = Rt;
      head.values.resize(static_cast<std::size_t>(std::max(job.spec.K, 2)), 0.0);
      write_cumulants_csv(f, head);
    }
    series.push_back({shape_name, 1, 2, "t = " + fmt("%g", t)});
    summary.push_back({{"t", t},
                       {"shape_csv", shape_name},
                       {"area", res.shape.area()},
                       {"sup_distance_to_vkls", sup_distance(res.shape, vk_ls_diagram())},
                       {"theta", theta_energy(res.shape)},
                       {"anchor_deviation", res.anchor_deviation}});
  }
  {
    auto f = open_out(dir / "limit_shape.gp");
    write_gnuplot_script(f, "omega_t", "limit_shape.png", series);
  }
  auto f = open_out(dir / "limit_shape.json");
  f << meta_json(meta, nlohmann::json{{"curves", summary}}.dump());
  return 0;
}

// ---------------------------------------------------------------- kernels

int cmd_kernels(const RunConfig& rc) {
  Config cfg = Config::load(rc.spec_path);
  KernelJob job = kernel_job_from_config(cfg);
  const bool needs_seed = std::find(job.methods.begin(), job.methods.end(), "monte_carlo") != job.methods.end();
  std::uint64_t seed = 0;
  if (needs_seed) {
    seed = require_seed(rc, &cfg);
    cfg.set("seed", std::to_string(seed));
  } else if (rc.seed) {
    seed = *rc.seed;
  }
  const auto dir = prepare_out(rc);
  std::vector<KernelRow> rows;
  std::uint64_t stream = 0;
  for (long long k : job.k)
    for (long long n : job.n) {
      std::vector<double> svals = job.s;
      for (double t : job.t) {
        double scale = static_cast<double>(n);
        if (const auto* st = std::get_if<OneSidedStable>(&job.law)) scale = std::pow(static_cast<double>(n), 1.0 / st->alpha);
        svals.push_back(t * scale);
      }
      for (double s : svals) {
        const KernelQuery q{static_cast<int>(k), n, s, job.law};
        for (const auto& m : job.methods) {
          KernelValue v;
          if (m == "exponential") {
            v = {f_exponential(q), 0.0};
          } else if (m == "quadrature") {
            v = f_stable_quadrature(q);
          } else if (m == "fourier") {
            v = f_fourier_inversion(q);
          } else {
            Rng rng(seed, stream++);
            const auto e = f_monte_carlo(q.k, n, s, job.law, job.trials, rng);
            v = {e.value, e.stderr_};
          }
          rows.push_back({q.k, n, s, m, v});
        }
      }
    }
  auto f = open_out(dir / "kernels.csv");
  write_meta_comment(f, {"kernels", cfg.hash(), seed});
  write_kernel_table_csv(f, rows);
  return 0;
}

// ---------------------------------------------------------------- verify

struct Check {
  std::string name;
  bool ok;
  double value;
  double tolerance;
};

int cmd_verify(const RunConfig& rc, const std::string& level) {
  if (level != "fast" && level != "full") throw ConfigError("level: '" + level + "' (fast, full)");
  const int nmax = level == "fast" ? 6 : 8;
  std::vector<Check> checks;
  auto add = [&](std::string name, double v, double tol) { checks.push_back({std::move(name), v <= tol, v, tol}); };

  for (int n = 2; n <= nmax; ++n) {
    const SmallChain c = full_matrix(n);
    const auto N = c.P.rows();
    double stoch = 0.0, inv = 0.0, bal = 0.0;
    for (Eigen::Index a = 0; a < N; ++a) stoch = std::max(stoch, std::abs(c.P.row(a).sum() - 1.0));
    inv = (c.plancherel.transpose() * c.P - c.plancherel.transpose()).cwiseAbs().maxCoeff();
    for (Eigen::Index a = 0; a < N; ++a)
      for (Eigen::Index b = 0; b < N; ++b)
        bal = std::max(bal, std::abs(c.plancherel(a) * c.P(a, b) - c.plancherel(b) * c.P(b, a)));
    const std::string tag = "n=" + std::to_string(n);
    add("row_stochastic " + tag, stoch, 1e-12);
    add("plancherel_invariant " + tag, inv, 1e-12);
    add("detailed_balance " + tag, bal, 1e-12);
    for (const char* rho : {"2", "3", "2,2", "4"}) {
      const auto r = CyclePartition::parse(rho);
      if (r.size() > n) continue;
      add("eigen_identity rho=(" + std::string(rho) + ") " + tag, eigen_identity_residual(c, r), 1e-10);
    }
  }
  for (int n = 2; n <= std::min(nmax, 6); ++n)
    for (const char* rho : {"2", "3"})
      for (double s : {0.5, 1.0, 2.0}) {
        const auto r = CyclePartition::parse(rho);
        if (r.size() > n) continue;
        add("propagation exponential n=" + std::to_string(n) + " rho=(" + rho + ") s=" + fmt("%g", s),
            propagation_check(n, r, Exponential{1.0}, s), 1e-10);
      }
  add("propagation unit n=4 rho=(2) s=3", propagation_check(4, CyclePartition::parse("2"), DeterministicUnit{}, 3.0), 1e-12);
  if (level == "full")
    for (int k = 2; k <= 6; ++k) {
      const auto fit = fit_kerov_polynomial(k, 12);
      add("kerov_fit k=" + std::to_string(k), static_cast<double>(kerov_max_residual(fit, 12)), 0.0);
    }

  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    all = all && c.ok;
    std::printf("%s %s value=%.3e tol=%.1e\n", c.ok ? "ok  " : "FAIL", c.name.c_str(), c.value, c.tolerance);
    arr.push_back({{"name", c.name}, {"ok", c.ok}, {"value", c.value}, {"tolerance", c.tolerance}});
  }
  if (rc.out_dir != ".") {
    const auto dir = prepare_out(rc);
    auto f = open_out(dir / "verify.json");
    Config params;
    params.set("level", level);
    f << meta_json({"verify", params.hash(), 0}, nlohmann::json{{"checks", arr}, {"passed", all}}.dump());
  }
  if (!all) throw VerificationError("verification failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"youngwalk " + tool_version() + ": restriction-induction walks on Young diagrams"};
  app.require_subcommand(1);
  RunConfig rc;
  std::uint64_t seed_value = 0;
  auto common = [&](CLI::App* sub, bool spec) {
    if (spec) sub->add_option("--spec", rc.spec_path, "config file (key = value)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", rc.out_dir, "output directory");
    sub->add_option("--seed", seed_value, "master seed");
    sub->add_option("--workers", rc.workers, "worker threads")->check(CLI::Range(1, 1024));
    sub->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  long long n = 1, count = 1;
  std::string init = "plancherel", level = "fast";
  auto* sample = app.add_subcommand("sample", "sample diagrams from an initializer");
  common(sample, false);
  sample->add_option("--n", n, "diagram size")->required();
  sample->add_option("--count", count, "number of diagrams")->required();
  sample->add_option("--initializer", init, "plancherel or rectangle:<aspect>");
  auto* simulate = app.add_subcommand("simulate", "run a trajectory ensemble");
  common(simulate, true);
  auto* limit = app.add_subcommand("limit-shape", "evolve free cumulants and invert the Markov transform");
  common(limit, true);
  auto* kernels = app.add_subcommand("kernels", "tabulate f(k, n, s)");
  common(kernels, true);
  auto* verify = app.add_subcommand("verify", "small-n oracle suite");
  common(verify, false);
  verify->add_option("--level", level, "fast or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_code = app.exit(e);
    return rc_code == 0 ? 0 : 2;
  }
  for (auto* sub : {sample, simulate, limit, kernels, verify})
    if (sub->parsed() && sub->count("--seed")) rc.seed = seed_value;

  try {
    if (sample->parsed()) return cmd_sample(rc, n, count, init);
    if (simulate->parsed()) return cmd_simulate(rc);
    if (limit->parsed()) return cmd_limit_shape(rc);
    if (kernels->parsed()) return cmd_kernels(rc);
    if (verify->parsed()) return cmd_verify(rc, level);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "{\"error\":\"config\",\"message\":%s}\n", nlohmann::json(e.what()).dump().c_str());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "{\"error\":\"numeric\",\"message\":%s}\n", nlohmann::json(e.what()).dump().c_str());
    return 3;
  } catch (const VerificationError& e) {
    std::fprintf(stderr, "{\"error\":\"verification\",\"message\":%s}\n", nlohmann::json(e.what()).dump().c_str());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\":\"numeric\",\"message\":%s}\n", nlohmann::json(e.what()).dump().c_str());
    return 3;
  }
  return 2;
}
