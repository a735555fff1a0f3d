#include <doctest.h>

#include <sstream>

#include "youngwalk/config.hpp"
#include "youngwalk/error.hpp"

using namespace yw;

namespace {
Config parse(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in, "test");
}

std::string config_error(const std::string& text, ExperimentSpec (*)(const Config&)) {
  try {
    experiment_spec_from_config(parse(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("key = value parsing") {
  const auto c = parse("# header\n n_grid = 100, 200  # trailing\n\nlaw=stable:0.5\n");
  CHECK(c.get("law", "") == "stable:0.5");
  CHECK(c.get_ints("n_grid", {}) == std::vector<long long>{100, 200});
  CHECK(c.get_double("missing", 2.5) == 2.5);
  CHECK_THROWS_AS(parse("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse("just text\n"), ConfigError);
  CHECK_THROWS_AS(parse("x = abc").get_double("x", 0), ConfigError);
  CHECK_THROWS_AS(parse("x = -1").get_u64("x", 0), ConfigError);
  CHECK(parse("x = 0x10").get_u64("x", 0) == 16);
}

TEST_CASE("hash ignores layout but not values") {
  const auto a = parse("a = 1\nb = 2\n"), b = parse("# c\nb=2\n  a =1\n"), c = parse("a = 1\nb = 3\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
}

TEST_CASE("experiment specs") {
  const auto s = experiment_spec_from_config(
      parse("n_grid = 1000\ninitializer = rectangle\naspect = 2\nlaw = exponential:1\ntime_points = 0.5, 1\n"
            "trajectories = 10\nseed = 42\n"));
  CHECK(s.initializer == InitKind::rectangle);
  CHECK(s.master_seed == 42);
  CHECK(s.time_points.size() == 2);

  const std::string m = config_error("n_grid = x\nlaw = nope\ntrajectories = 0\nbogus = 1\nscaling = sideways\n",
                                     experiment_spec_from_config);
  for (const char* field : {"n_grid", "nope", "trajectories", "bogus", "scaling"})
    CHECK_MESSAGE(m.find(field) != std::string::npos, field);
}

TEST_CASE("kernel and limit-shape jobs") {
  const auto k = kernel_job_from_config(parse("k = 2,3\nn = 100\nt = 1\nlaw = stable:0.5\n"));
  CHECK(k.methods == std::vector<std::string>{"quadrature", "fourier"});
  CHECK_THROWS_AS(kernel_job_from_config(parse("s = 1\nt = 1\n")), ConfigError);
  CHECK_THROWS_AS(kernel_job_from_config(parse("t = 1\nmethods = guess\n")), ConfigError);

  const auto ls = limit_shape_job_from_config(parse("reference = rectangle:2\ntime_points = 0, 1\n"));
  CHECK(ls.time_points.size() == 2);
  CHECK(ls.spec.R0.values.size() >= static_cast<std::size_t>(ls.spec.moment_order));
  CHECK_THROWS_AS(limit_shape_job_from_config(parse("reference = cumulants\nR = 0, 2\n")), ConfigError);
}
