#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "youngwalk/characters.hpp"
#include "youngwalk/freeprob.hpp"
#include "youngwalk/kernels.hpp"
#include "youngwalk/sampling.hpp"

namespace yw {

enum class InitKind { plancherel, rectangle, file };
enum class Scaling { diffusive, anomalous };

struct ExperimentSpec {
  std::vector<long long> n_grid{1000};
  InitKind initializer = InitKind::plancherel;
  double aspect = 1.0;
  std::string init_file;  // one partition per line, each of size n
  PausingLaw law = Exponential{};
  std::vector<double> time_points{0.0};  // macroscopic t, nondecreasing
  Scaling scaling = Scaling::diffusive;
  // Anomalous scaling: s = t theta_n with
  //   theta_n = theta_coeff * n^{1/alpha + theta_power} * (log n)^{theta_log_power}.
  double theta_coeff = 1.0;
  double theta_power = 0.0;
  double theta_log_power = 0.0;
  int trajectories = 1;
  int K = 6;  // moments M_0..M_K and cumulants R_1..R_K
  std::uint64_t master_seed = 0;
  int workers = 1;
  // Mean rescaled profile sampled at this many points on [-span, span]; 0 = off.
  int profile_points = 0;
  double profile_span = 3.0;

  void validate() const;
  // s / t for size n.
  double time_scale(long long n) const;
  // theta_n / n^{1/alpha} for anomalous scaling.
  double theta_ratio(long long n) const;
  Regime regime() const;
};

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;  // sample variance (n - 1 denominator)
  double stderr_ = 0.0;
};

// Statistics of one (n, t) cell across trajectories.
struct CellStats {
  long long n = 0;
  double t = 0.0;
  double s = 0.0;
  int count = 0;
  double mean_jumps = 0.0;
  std::vector<MeanVar> moments;    // M_0..M_K of the rescaled transition measure
  std::vector<MeanVar> cumulants;  // R_1..R_K (index j-1)
  // E[M_a M_b] for a, b in {2, 3, 4} (row-major 3x3).
  std::vector<double> moment_products;
  // Defect estimate (E[Sigma_22] - E[Sigma_2]^2) / n^3 and its standard error.
  double defect = 0.0;
  double defect_stderr = 0.0;
  std::vector<double> profile_x;
  std::vector<double> profile_mean;

  ContinuousDiagram mean_profile() const;
};

struct EnsembleStats {
  ExperimentSpec spec;
  std::vector<CellStats> cells;  // n-major, then t

  const CellStats& at(long long n, double t) const;
};

EnsembleStats run_ensemble(const ExperimentSpec& spec);

// Cumulants R_1..K of the rescaled starting point (the diagram itself for
// rectangle/file starts; the semicircle for Plancherel starts).
CumulantSeq initial_cumulants(const ExperimentSpec& spec, long long n, int K);

// |E_{M_s}[Sigma_rho] - f(|rho| - m_1(rho), n, s) E_{M_0}[Sigma_rho]| on the
// exact chain, M_0 = point mass at lambda0 (default: the hook (n-1, 1)).
double propagation_check(int n, const CyclePartition& rho, const PausingLaw& law, double s,
                         const YoungDiagram& lambda0 = {});

struct CovarianceTrend {
  double t = 0.0;
  int k1 = 0, k2 = 0;
  std::vector<double> abs_cov;  // one per n in the grid
  bool non_increasing = true;
};

struct ConcentrationReport {
  std::vector<long long> n_grid;
  std::vector<CovarianceTrend> trends;
  // max_k |E[M_k] - M_k(reference)| per (n, t), n-major.
  std::vector<double> moment_distance;
  bool all_non_increasing = true;
};

ConcentrationReport concentration_report(const EnsembleStats& stats, const CumulantSeq& reference);

struct CumulantRow {
  long long n = 0;
  double t = 0.0;
  int k = 0;  // the row is about R_{k+1}
  double empirical = 0.0;
  double stderr_ = 0.0;
  double predicted = 0.0;
  double z = 0.0;
  double rel_error = 0.0;
};

struct Theorem11Table {
  std::vector<CumulantRow> rows;
  struct Profile {
    long long n;
    double t;
    double sup_distance;
  };
  std::vector<Profile> profiles;
};

// Requires exponential pauses and diffusive scaling.
Theorem11Table theorem11_reproduction(const ExperimentSpec& spec, int moment_order = 24);
Theorem11Table theorem11_from_stats(const EnsembleStats& stats, int moment_order = 24);

struct Theorem12Table {
  Regime regime = Regime::critical;
  std::vector<CumulantRow> rows;
  // Exact finite-n expectation f(2, n, s) R_3(start) of R_3.
  std::vector<double> r3_finite_n;
  struct Defect {
    long long n;
    double t;
    double estimate;
    double stderr_;
    double predicted;  // main term times R_3(start)^2
    bool sign_agrees;
  };
  std::vector<Defect> defects;
};

// Requires one-sided stable pauses and anomalous scaling.
Theorem12Table theorem12_reproduction(const ExperimentSpec& spec);
Theorem12Table theorem12_from_stats(const EnsembleStats& stats);

}  // namespace yw
