#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "youngwalk/experiments.hpp"
#include "youngwalk/freeprob.hpp"

namespace yw {

// Flat "key = value" text. '#' starts a comment; keys are unique.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& entries() const { return values_; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<long long> get_ints(const std::string& key, const std::vector<long long>& fallback) const;

  // Throws ConfigError naming every key outside `allowed`.
  void check_keys(const std::set<std::string>& allowed) const;

  // "key=value" lines in key order.
  std::string normalized() const;
  // FNV-1a of normalized(), as 16 hex digits.
  std::string hash() const;

 private:
  std::string source_;
  std::map<std::string, std::string> values_;
};

// Keys: n_grid, initializer (plancherel | rectangle | file), aspect,
// init_file, law, time_points, scaling (diffusive | anomalous), theta_coeff,
// theta_power, theta_log_power, trajectories, K, seed, workers,
// profile_points, profile_span.
ExperimentSpec experiment_spec_from_config(const Config& c);
extern const std::set<std::string> kExperimentKeys;

// Keys: reference (semicircle | rectangle:<aspect> | cumulants), R (comma
// list R_1..R_K for reference = cumulants), mean, time_points, K,
// moment_order, grid_left, grid_right, grid_step, eps.
struct LimitShapeJob {
  LimitShapeSpec spec;
  std::vector<double> time_points{0.0};
};
LimitShapeJob limit_shape_job_from_config(const Config& c);
extern const std::set<std::string> kLimitShapeKeys;

// Keys: k (list), n (list), s (list) or t (list, s = t n for exponential and
// t n^{1/alpha} for stable laws), law, methods (comma list of exponential,
// quadrature, fourier, monte_carlo), trials, seed.
struct KernelJob {
  std::vector<long long> k{2};
  std::vector<long long> n{100};
  std::vector<double> s;
  std::vector<double> t;
  PausingLaw law = Exponential{};
  std::vector<std::string> methods;
  long long trials = 100000;
  std::uint64_t seed = 0;
};
KernelJob kernel_job_from_config(const Config& c);
extern const std::set<std::string> kKernelKeys;

}  // namespace yw
