#pragma once

#include <cstdint>
#include <random>

namespace yw {

std::uint64_t splitmix64(std::uint64_t& state);

// Per-stream generator. Streams are keyed by (master seed, stream index) so a
// trajectory's draws do not depend on which worker runs it.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  // Standard exponential.
  double exponential();
  long long poisson(double mean);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace yw
