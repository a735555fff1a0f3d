#pragma once

#include <stdexcept>
#include <string>

namespace yw {

// Exception hierarchy. The CLI maps each kind onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed partitions, out-of-range parameters, invalid config.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed (non-convergence, invalid moment sequence,
// normalization drift beyond tolerance).
class NumericError : public Error {
 public:
  using Error::Error;
};

// A verification check did not hold.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace yw
