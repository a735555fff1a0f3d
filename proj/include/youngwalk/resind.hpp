#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "youngwalk/characters.hpp"
#include "youngwalk/rng.hpp"
#include "youngwalk/young.hpp"

namespace yw {

struct TransitionRow {
  YoungDiagram source;
  std::vector<std::pair<YoungDiagram, double>> targets;

  double total() const;
};

// Restriction: remove one corner with probability dim(nu)/dim(lambda).
TransitionRow down_distribution(const YoungDiagram& lambda);
// Induction: add one corner to nu (|nu| = n-1) with probability
// dim(mu) / (n dim(nu)).
TransitionRow up_distribution(const YoungDiagram& nu, long long n);

// Reusable workspace for sampling steps on large diagrams. Corner
// probabilities come from the interlacing products of the transition and
// co-transition measures, evaluated with the active SIMD kernels.
class ResIndStepper {
 public:
  // Remove a corner; returns the row it was taken from.
  int down(YoungDiagram& d, Rng& rng);
  // Add a corner with the transition-measure weights; returns the row.
  int up(YoungDiagram& d, Rng& rng);
  // One restriction-induction move; |d| is unchanged.
  void step(YoungDiagram& d, Rng& rng) {
    down(d, rng);
    up(d, rng);
  }

 private:
  void load_corners(const YoungDiagram& d);
  std::size_t pick(const std::vector<double>& w, double total, Rng& rng) const;

  std::vector<double> valleys_, peaks_, weights_;
  std::vector<int> valley_rows_, peak_rows_;
};

YoungDiagram res_ind_step(const YoungDiagram& lambda, Rng& rng);

// Owns one diagram and runs the Res-Ind chain on it. A move changes only a few
// interlacing points, so the corner weights are updated in O(r) per move and
// rebuilt with the SIMD kernels every `refresh_interval` moves. Consumes the
// same uniforms as ResIndStepper::step.
class ResIndWalker {
 public:
  explicit ResIndWalker(YoungDiagram d, int refresh_interval = 256);

  void step(Rng& rng);
  void steps(long long count, Rng& rng) {
    for (long long i = 0; i < count; ++i) step(rng);
  }

  const YoungDiagram& diagram() const { return d_; }
  // Valleys x, peaks y and their current weights.
  const std::vector<double>& valleys() const { return x_; }
  const std::vector<double>& peaks() const { return y_; }
  const std::vector<double>& valley_weights() const { return wx_; }
  const std::vector<double>& peak_weights() const { return wy_; }

 private:
  void rebuild();
  void flip(double c, bool removal);
  int row_with_offset(int h) const;

  YoungDiagram d_;
  int refresh_interval_;
  int since_refresh_ = 0;
  std::vector<double> x_, y_, wx_, wy_;
};

// Exact chain on Y_n for small n, states in decreasing lexicographic order.
struct SmallChain {
  int n = 0;
  std::vector<YoungDiagram> states;
  Eigen::MatrixXd P;           // row-stochastic transition matrix
  Eigen::VectorXd plancherel;  // (dim lambda)^2 / n!

  int index_of(const YoungDiagram& d) const;
  Eigen::VectorXd sigma_vector(const CyclePartition& rho) const;
};

SmallChain full_matrix(int n);

// Eigenvalue 1 - (|rho| - m_1(rho))/n of Sigma_rho under P.
double sigma_eigenvalue(int n, const CyclePartition& rho);
// Max-norm of P Sigma_rho - eigenvalue * Sigma_rho on Y_n.
double eigen_identity_residual(int n, const CyclePartition& rho);
double eigen_identity_residual(const SmallChain& chain, const CyclePartition& rho);

void write_matrix_csv(std::ostream& os, const SmallChain& chain);

}  // namespace yw
