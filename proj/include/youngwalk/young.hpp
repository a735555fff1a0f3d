#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "youngwalk/sequences.hpp"

namespace yw {

// Integer partition stored as weakly decreasing positive row lengths.
class YoungDiagram {
 public:
  YoungDiagram() = default;
  explicit YoungDiagram(std::vector<int> rows);

  const std::vector<int>& rows() const { return rows_; }
  long long size() const { return size_; }
  int length() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }
  // 0-based row access; rows past the end have length 0.
  int row(int i) const { return i < length() ? rows_[static_cast<std::size_t>(i)] : 0; }
  // m_j: number of rows of length j.
  int multiplicity(int j) const;

  // In-place corner moves (0-based row). Both keep the rows weakly decreasing
  // or throw.
  void add_box(int i);
  void remove_box(int i);

  YoungDiagram conjugate() const;
  std::string to_string() const;
  static YoungDiagram parse(std::string_view text);

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
  friend std::strong_ordering operator<=>(const YoungDiagram& a, const YoungDiagram& b) {
    return a.rows_ <=> b.rows_;
  }

 private:
  std::vector<int> rows_;
  long long size_ = 0;
};

std::ostream& operator<<(std::ostream& os, const YoungDiagram& d);

struct Corner {
  int row;      // 0-based
  int content;  // column - row in 1-based coordinates
};

// Removable corners ordered by row. Throws ConfigError("no boxes") on the
// empty diagram.
std::vector<Corner> removable_corners(const YoungDiagram& d);
// Addable corners ordered by row, including the new row below the last one.
std::vector<Corner> addable_corners(const YoungDiagram& d);

// Natural log of the number of standard tableaux, via the hook length formula.
double log_dimension(const YoungDiagram& d);
// Exact dimension.
boost::multiprecision::cpp_int dimension_exact(const YoungDiagram& d);

struct InterlacingCoordinates {
  std::vector<double> valleys;  // x_1 < ... < x_r
  std::vector<double> peaks;    // y_1 < ... < y_{r-1}
};
InterlacingCoordinates interlacing(const YoungDiagram& d);

struct Atom {
  double location;
  double weight;
};

class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  // Validates: locations strictly increasing, weights positive summing to 1.
  explicit AtomicMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  AtomicMeasure scaled(double c) const;

 private:
  std::vector<Atom> atoms_;
};

// Transition measure from the partial fraction expansion of
// prod (z - y_j) / prod (z - x_i).
AtomicMeasure transition_measure(const YoungDiagram& d);

MomentSeq measure_moments(const AtomicMeasure& mu, int K);

// Piecewise-linear continuous diagram. Breakpoints are strictly increasing in
// x; outside [x.front(), x.back()] the curve is |x|.
class ContinuousDiagram {
 public:
  ContinuousDiagram();  // the trivial diagram |x|
  ContinuousDiagram(std::vector<double> x, std::vector<double> omega);

  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& omegas() const { return w_; }
  double support_left() const { return x_.front(); }
  double support_right() const { return x_.back(); }

  double operator()(double x) const;
  // Integral of (omega - |x|).
  double area() const;
  // Largest |slope| over all cells (1 for a valid diagram).
  double max_slope() const;
  bool is_valid(double tol = 1e-9) const;

  // Kerov power sums p_k = (1/2) sum_i x_i^k * (slope jump at x_i), k=0..K,
  // with zG(z) = exp(sum_{k>=1} p_k z^{-k} / k).
  std::vector<double> kerov_power_sums(int K) const;

 private:
  std::vector<double> x_;
  std::vector<double> w_;
};

// Profile of d in Russian coordinates, unscaled.
ContinuousDiagram profile(const YoungDiagram& d);
// Profile with both axes divided by sqrt(n).
ContinuousDiagram rescaled_profile(const YoungDiagram& d, long long n);

// Exact sup distance of two piecewise-linear diagrams (merged mesh).
double sup_distance(const ContinuousDiagram& a, const ContinuousDiagram& b);

// Moments of the transition measure of a piecewise-linear diagram.
MomentSeq transition_moments(const ContinuousDiagram& w, int K);

void write_profile_csv(std::ostream& os, const ContinuousDiagram& w);

// One partition per line, comma separated; blank lines are the empty diagram.
std::vector<YoungDiagram> read_partitions(std::istream& is);
void write_partitions(std::ostream& os, const std::vector<YoungDiagram>& ds);

// All partitions of n in decreasing lexicographic order: (n), (n-1,1), ...
std::vector<YoungDiagram> partitions_of(int n);

}  // namespace yw
