#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace yw {

// Moments M_0..M_K of a probability measure; values[k] = M_k.
struct MomentSeq {
  std::vector<double> values;

  double operator[](std::size_t k) const { return values[k]; }
  int order() const { return static_cast<int>(values.size()) - 1; }
};

// Free cumulants R_1..R_K; values[j-1] = R_j.
struct CumulantSeq {
  std::vector<double> values;
  // Optional b with |R_j| <= b^j; metadata only.
  std::optional<double> growth_bound;

  double at(int j) const {
    return (j >= 1 && j <= order()) ? values[static_cast<std::size_t>(j - 1)] : 0.0;
  }
  int order() const { return static_cast<int>(values.size()); }
  bool satisfies_growth_bound() const;
};

// Semicircle of variance 1: R_2 = 1, everything else 0.
CumulantSeq semicircle_cumulants(int K);

}  // namespace yw
