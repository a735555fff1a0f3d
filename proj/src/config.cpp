#include "youngwalk/config.hpp"

#include <cerrno>
#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "youngwalk/error.hpp"

namespace yw {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(key + ": '" + v + "' is not a number");
  return d;
}

long long to_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const long long d = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(key + ": '" + v + "' is not an integer");
  return d;
}

// Runs each field reader, collecting all messages into one error.
class FieldErrors {
 public:
  template <class F>
  void read(F&& f) {
    try {
      f();
    } catch (const ConfigError& e) {
      std::string m = e.what();
      if (m.rfind("invalid ", 0) == 0)
        if (const auto c = m.find(": "); c != std::string::npos) m.erase(0, c + 2);
      msgs_ += (msgs_.empty() ? "" : "; ") + m;
    }
  }
  void finish(const std::string& what) const {
    if (!msgs_.empty()) throw ConfigError("invalid " + what + ": " + msgs_);
  }

 private:
  std::string msgs_;
};

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
  Config c;
  c.source_ = source;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    if (!c.values_.emplace(key, value).second)
      throw ConfigError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse(in, path);
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Config::require(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key + ": missing");
  return it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? to_double(key, values_.at(key)) : fallback;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  return has(key) ? to_int(key, values_.at(key)) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = values_.at(key);
  char* end = nullptr;
  errno = 0;
  const unsigned long long d = std::strtoull(v.c_str(), &end, 0);
  if (v.empty() || v[0] == '-' || *end != '\0' || errno == ERANGE)
    throw ConfigError(key + ": '" + v + "' is not an unsigned 64-bit integer");
  return d;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(values_.at(key))) out.push_back(to_double(key, item));
  return out;
}

std::vector<long long> Config::get_ints(const std::string& key, const std::vector<long long>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<long long> out;
  for (const auto& item : split_list(values_.at(key))) out.push_back(to_int(key, item));
  return out;
}

void Config::check_keys(const std::set<std::string>& allowed) const {
  std::string unknown;
  for (const auto& [k, v] : values_)
    if (!allowed.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
  if (!unknown.empty()) throw ConfigError(source_ + ": unknown keys: " + unknown);
}

std::string Config::normalized() const {
  std::string s;
  for (const auto& [k, v] : values_) s += k + "=" + v + "\n";
  return s;
}

std::string Config::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : normalized()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::set<std::string> kExperimentKeys = {
    "n_grid",      "initializer", "aspect",          "init_file",    "law",     "time_points",
    "scaling",     "theta_coeff", "theta_power",     "theta_log_power", "trajectories", "K",
    "seed",        "workers",     "profile_points",  "profile_span"};

ExperimentSpec experiment_spec_from_config(const Config& c) {
  ExperimentSpec s;
  FieldErrors errs;
  errs.read([&] { c.check_keys(kExperimentKeys); });
  errs.read([&] { s.n_grid = c.get_ints("n_grid", s.n_grid); });
  errs.read([&] {
    const auto init = c.get("initializer", "plancherel");
    if (init == "plancherel")
      s.initializer = InitKind::plancherel;
    else if (init == "rectangle")
      s.initializer = InitKind::rectangle;
    else if (init == "file")
      s.initializer = InitKind::file;
    else
      throw ConfigError("initializer: '" + init + "' (plancherel, rectangle, file)");
  });
  errs.read([&] { s.aspect = c.get_double("aspect", s.aspect); });
  s.init_file = c.get("init_file", "");
  errs.read([&] { s.law = parse_law(c.get("law", "exponential:1")); });
  errs.read([&] { s.time_points = c.get_doubles("time_points", s.time_points); });
  errs.read([&] {
    const auto sc = c.get("scaling", "diffusive");
    if (sc == "diffusive")
      s.scaling = Scaling::diffusive;
    else if (sc == "anomalous")
      s.scaling = Scaling::anomalous;
    else
      throw ConfigError("scaling: '" + sc + "' (diffusive, anomalous)");
  });
  errs.read([&] { s.theta_coeff = c.get_double("theta_coeff", s.theta_coeff); });
  errs.read([&] { s.theta_power = c.get_double("theta_power", s.theta_power); });
  errs.read([&] { s.theta_log_power = c.get_double("theta_log_power", s.theta_log_power); });
  errs.read([&] { s.trajectories = static_cast<int>(c.get_int("trajectories", s.trajectories)); });
  errs.read([&] { s.K = static_cast<int>(c.get_int("K", s.K)); });
  errs.read([&] { s.master_seed = c.get_u64("seed", s.master_seed); });
  errs.read([&] { s.workers = static_cast<int>(c.get_int("workers", s.workers)); });
  errs.read([&] { s.profile_points = static_cast<int>(c.get_int("profile_points", s.profile_points)); });
  errs.read([&] { s.profile_span = c.get_double("profile_span", s.profile_span); });
  errs.read([&] { s.validate(); });
  errs.finish("experiment spec");
  return s;
}

const std::set<std::string> kLimitShapeKeys = {"reference", "R",    "mean",      "time_points", "K",
                                               "moment_order", "grid_left", "grid_right", "grid_step", "eps"};

LimitShapeJob limit_shape_job_from_config(const Config& c) {
  LimitShapeJob job;
  auto& s = job.spec;
  FieldErrors errs;
  errs.read([&] { c.check_keys(kLimitShapeKeys); });
  errs.read([&] { s.K = static_cast<int>(c.get_int("K", s.K)); });
  errs.read([&] { s.moment_order = static_cast<int>(c.get_int("moment_order", s.moment_order)); });
  errs.read([&] {
    const auto ref = c.get("reference", "semicircle");
    if (ref == "semicircle") {
      s.R0 = semicircle_cumulants(std::max(s.K, 2));
    } else if (ref.rfind("rectangle:", 0) == 0) {
      s.R0 = rectangle_limit_cumulants(to_double("reference", ref.substr(10)),
                                       std::max({s.K, s.moment_order, 2}));
    } else if (ref == "cumulants") {
      s.R0.values = c.get_doubles("R", {});
      if (s.R0.values.size() < 2) throw ConfigError("R: at least R_1, R_2 are required");
    } else {
      throw ConfigError("reference: '" + ref + "' (semicircle, rectangle:<aspect>, cumulants)");
    }
  });
  errs.read([&] { s.mean = c.get_double("mean", s.mean); });
  errs.read([&] { job.time_points = c.get_doubles("time_points", job.time_points); });
  errs.read([&] { s.grid.left = c.get_double("grid_left", s.grid.left); });
  errs.read([&] { s.grid.right = c.get_double("grid_right", s.grid.right); });
  errs.read([&] { s.grid.step = c.get_double("grid_step", s.grid.step); });
  errs.read([&] { s.eps = c.get_double("eps", s.eps); });
  errs.read([&] {
    for (double t : job.time_points)
      if (!(t >= 0.0)) throw ConfigError("time_points: must be >= 0");
  });
  errs.read([&] { s.validate(); });
  errs.finish("limit-shape spec");
  return job;
}

const std::set<std::string> kKernelKeys = {"k", "n", "s", "t", "law", "methods", "trials", "seed"};

KernelJob kernel_job_from_config(const Config& c) {
  KernelJob job;
  FieldErrors errs;
  errs.read([&] { c.check_keys(kKernelKeys); });
  errs.read([&] { job.k = c.get_ints("k", job.k); });
  errs.read([&] { job.n = c.get_ints("n", job.n); });
  errs.read([&] { job.s = c.get_doubles("s", {}); });
  errs.read([&] { job.t = c.get_doubles("t", {}); });
  errs.read([&] { job.law = parse_law(c.get("law", "exponential:1")); });
  errs.read([&] { job.trials = c.get_int("trials", job.trials); });
  errs.read([&] { job.seed = c.get_u64("seed", job.seed); });
  job.methods = split_list(c.get("methods", ""));
  errs.read([&] {
    if (job.s.empty() == job.t.empty()) throw ConfigError("s/t: give exactly one of s or t");
    for (const auto& m : job.methods)
      if (m != "exponential" && m != "quadrature" && m != "fourier" && m != "monte_carlo")
        throw ConfigError("methods: unknown method '" + m + "'");
    if (job.trials < 2) throw ConfigError("trials: must be >= 2");
    for (long long k : job.k)
      if (k < 2) throw ConfigError("k: must be >= 2");
    for (long long n : job.n)
      for (long long k : job.k)
        if (n < k) throw ConfigError("n: every n must be >= every k");
  });
  errs.finish("kernel spec");
  if (job.methods.empty()) {
    if (std::holds_alternative<Exponential>(job.law))
      job.methods = {"exponential", "fourier"};
    else if (std::holds_alternative<OneSidedStable>(job.law))
      job.methods = {"quadrature", "fourier"};
    else
      job.methods = {"monte_carlo"};
  }
  return job;
}

}  // namespace yw
