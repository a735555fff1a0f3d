#include "youngwalk/resind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "youngwalk/error.hpp"
#include "youngwalk/simd.hpp"

namespace yw {

double TransitionRow::total() const {
  double s = 0.0;
  for (const auto& t : targets) s += t.second;
  return s;
}

namespace {

std::vector<int> column_lengths(const YoungDiagram& d) {
  std::vector<int> cols(static_cast<std::size_t>(d.row(0)), 0);
  for (int r : d.rows())
    for (int j = 0; j < r; ++j) ++cols[static_cast<std::size_t>(j)];
  return cols;
}

// Exponentiates log-probabilities and renormalizes; drift beyond 1e-9 means
// the branching rule was violated.
void finish_row(TransitionRow& row, const std::vector<double>& logp) {
  double total = 0.0;
  for (std::size_t i = 0; i < logp.size(); ++i) {
    row.targets[i].second = std::exp(logp[i]);
    total += row.targets[i].second;
  }
  if (std::abs(total - 1.0) > 1e-9) throw NumericError("transition row drifted from 1");
  for (auto& t : row.targets) t.second /= total;
}

}  // namespace

TransitionRow down_distribution(const YoungDiagram& lambda) {
  const auto corners = removable_corners(lambda);
  const auto cols = column_lengths(lambda);
  const double log_n = std::log(static_cast<double>(lambda.size()));
  TransitionRow row{lambda, {}};
  std::vector<double> logp;
  for (const auto& c : corners) {
    const int i = c.row;
    const int col = lambda.row(i) - 1;
    // dim(nu)/dim(lambda) = (1/n) prod h/(h-1) over the hooks that shrink:
    // the rest of row i and the rest of column col.
    double lp = -log_n;
    for (int j = 0; j < col; ++j) {
      const int h = lambda.row(i) - j + cols[static_cast<std::size_t>(j)] - i - 1;
      lp += std::log(static_cast<double>(h)) - std::log(static_cast<double>(h - 1));
    }
    for (int r = 0; r < i; ++r) {
      const int h = lambda.row(r) - col + cols[static_cast<std::size_t>(col)] - r - 1;
      lp += std::log(static_cast<double>(h)) - std::log(static_cast<double>(h - 1));
    }
    YoungDiagram nu = lambda;
    nu.remove_box(i);
    row.targets.emplace_back(std::move(nu), 0.0);
    logp.push_back(lp);
  }
  finish_row(row, logp);
  return row;
}

TransitionRow up_distribution(const YoungDiagram& nu, long long n) {
  if (nu.size() != n - 1) throw ConfigError("up_distribution: |nu| must equal n-1");
  const auto cols = column_lengths(nu);
  TransitionRow row{nu, {}};
  std::vector<double> logp;
  for (const auto& c : addable_corners(nu)) {
    const int i = c.row;
    const int col = nu.row(i);
    // dim(mu)/(n dim(nu)) = prod (h-1)/h over the hooks of mu that grew.
    auto mu_col = [&](int j) { return j == col ? i + 1 : cols[static_cast<std::size_t>(j)]; };
    double lp = 0.0;
    for (int j = 0; j < col; ++j) {
      const int h = (nu.row(i) + 1) - j + mu_col(j) - i - 1;
      lp += std::log(static_cast<double>(h - 1)) - std::log(static_cast<double>(h));
    }
    for (int r = 0; r < i; ++r) {
      const int h = nu.row(r) - col + mu_col(col) - r - 1;
      lp += std::log(static_cast<double>(h - 1)) - std::log(static_cast<double>(h));
    }
    YoungDiagram mu = nu;
    mu.add_box(i);
    row.targets.emplace_back(std::move(mu), 0.0);
    logp.push_back(lp);
  }
  finish_row(row, logp);
  return row;
}

void ResIndStepper::load_corners(const YoungDiagram& d) {
  valleys_.clear();
  peaks_.clear();
  valley_rows_.clear();
  peak_rows_.clear();
  const int l = d.length();
  // Bottom to top gives increasing contents.
  valleys_.push_back(-l);
  valley_rows_.push_back(l);
  for (int i = l - 1; i >= 0; --i) {
    const int r = d.row(i);
    if (r > d.row(i + 1)) {
      peaks_.push_back(r - i - 1);
      peak_rows_.push_back(i);
    }
    if (i == 0 || d.row(i - 1) > r) {
      valleys_.push_back(r - i);
      valley_rows_.push_back(i);
    }
  }
}

std::size_t ResIndStepper::pick(const std::vector<double>& w, double total, Rng& rng) const {
  double sum = 0.0;
  for (double v : w) sum += v;
  if (std::abs(sum - total) > 1e-9 * total) throw NumericError("corner probabilities drifted");
  const double u = rng.uniform() * sum;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    acc += w[i];
    if (u < acc) return i;
  }
  return w.size() - 1;
}

int ResIndStepper::down(YoungDiagram& d, Rng& rng) {
  if (d.empty()) throw ConfigError("no boxes");
  load_corners(d);
  weights_.resize(peaks_.size());
  simd::active().peak_weights(valleys_, peaks_, weights_);
  const int row = peak_rows_[pick(weights_, static_cast<double>(d.size()), rng)];
  d.remove_box(row);
  return row;
}

int ResIndStepper::up(YoungDiagram& d, Rng& rng) {
  load_corners(d);
  weights_.resize(valleys_.size());
  simd::active().valley_weights(valleys_, peaks_, weights_);
  const int row = valley_rows_[pick(weights_, 1.0, rng)];
  d.add_box(row);
  return row;
}

ResIndWalker::ResIndWalker(YoungDiagram d, int refresh_interval)
    : d_(std::move(d)), refresh_interval_(refresh_interval) {
  if (d_.empty()) throw ConfigError("no boxes");
  if (refresh_interval_ < 1) throw ConfigError("refresh interval must be positive");
  rebuild();
}

void ResIndWalker::rebuild() {
  x_.clear();
  y_.clear();
  const int l = d_.length();
  x_.push_back(-l);
  for (int i = l - 1; i >= 0; --i) {
    const int r = d_.row(i);
    if (r > d_.row(i + 1)) y_.push_back(r - i - 1);
    if (i == 0 || d_.row(i - 1) > r) x_.push_back(r - i);
  }
  wx_.resize(x_.size());
  wy_.resize(y_.size());
  simd::active().valley_weights(x_, y_, wx_);
  simd::active().peak_weights(x_, y_, wy_);
  since_refresh_ = 0;
}

namespace {

bool contains(const std::vector<double>& v, double p) { return std::binary_search(v.begin(), v.end(), p); }

void erase_point(std::vector<double>& v, std::vector<double>& w, double p) {
  const auto it = std::lower_bound(v.begin(), v.end(), p);
  if (it == v.end() || *it != p) throw NumericError("interlacing point bookkeeping lost");
  w.erase(w.begin() + (it - v.begin()));
  v.erase(it);
}

void insert_point(std::vector<double>& v, std::vector<double>& w, double p) {
  const auto it = std::lower_bound(v.begin(), v.end(), p);
  w.insert(w.begin() + (it - v.begin()), 0.0);
  v.insert(it, p);
}

// w_i *= 1 - 1/(v_i - c)^2, or /= with `invert`.
void neighbour_factor(const std::vector<double>& v, std::vector<double>& w, double c, bool invert) {
  const std::size_t m = v.size();
  if (invert) {
    for (std::size_t i = 0; i < m; ++i) {
      const double d = v[i] - c;
      w[i] *= d * d / (d * d - 1.0);
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      const double d = v[i] - c;
      w[i] *= (d * d - 1.0) / (d * d);
    }
  }
}

// prod_num (p - a) / prod_{den, != p} (p - b), folded every 8 factors.
double fresh_weight(double p, const std::vector<double>& num, const std::vector<double>& den) {
  double w = 1.0, pn = 1.0, pd = 1.0;
  const std::size_t m = std::max(num.size(), den.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (i < num.size()) pn *= p - num[i];
    if (i < den.size() && den[i] != p) pd *= p - den[i];
    if ((i & 7) == 7) {
      w *= pn / pd;
      pn = pd = 1.0;
    }
  }
  return w * pn / pd;
}

std::size_t pick_index(const std::vector<double>& w, double total, Rng& rng) {
  double sum = 0.0;
  for (double v : w) sum += v;
  if (std::abs(sum - total) > 1e-9 * total) throw NumericError("corner probabilities drifted");
  const double u = rng.uniform() * sum;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    acc += w[i];
    if (u < acc) return i;
  }
  return w.size() - 1;
}

}  // namespace

// Row i with row(i) - i == h; row(i) - i is strictly decreasing in i.
int ResIndWalker::row_with_offset(int h) const {
  int lo = 0, hi = d_.length();
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (d_.row(mid) - mid > h)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (d_.row(lo) - lo != h) throw NumericError("no row at the sampled corner");
  return lo;
}

// Turning the corner at c from a peak into a valley (or back) flips c and its
// neighbours c +- 1. On the surviving points the weights change by
// 1 - 1/(p - c)^2 (valleys on removal, peaks on addition) or its inverse; the
// points that appear get fresh products.
void ResIndWalker::flip(double c, bool removal) {
  auto& from = removal ? y_ : x_;
  auto& from_w = removal ? wy_ : wx_;
  auto& to = removal ? x_ : y_;
  auto& to_w = removal ? wx_ : wy_;
  neighbour_factor(to, to_w, c, false);
  neighbour_factor(from, from_w, c, true);

  double fresh_from[2];
  int n_fresh = 0;
  erase_point(from, from_w, c);
  for (double nb : {c - 1.0, c + 1.0}) {
    if (contains(to, nb)) {
      erase_point(to, to_w, nb);
    } else {
      insert_point(from, from_w, nb);
      fresh_from[n_fresh++] = nb;
    }
  }
  insert_point(to, to_w, c);

  auto weight = [&](double p, bool valley) {
    return valley ? fresh_weight(p, y_, x_) : -fresh_weight(p, x_, y_);
  };
  to_w[static_cast<std::size_t>(std::lower_bound(to.begin(), to.end(), c) - to.begin())] = weight(c, removal);
  for (int i = 0; i < n_fresh; ++i) {
    const double p = fresh_from[i];
    from_w[static_cast<std::size_t>(std::lower_bound(from.begin(), from.end(), p) - from.begin())] = weight(p, !removal);
  }
}

void ResIndWalker::step(Rng& rng) {
  if (since_refresh_ >= refresh_interval_) rebuild();
  ++since_refresh_;

  const double c = y_[pick_index(wy_, static_cast<double>(d_.size()), rng)];
  d_.remove_box(row_with_offset(static_cast<int>(c) + 1));
  flip(c, true);

  const double v = x_[pick_index(wx_, 1.0, rng)];
  d_.add_box(row_with_offset(static_cast<int>(v)));
  flip(v, false);
}

YoungDiagram res_ind_step(const YoungDiagram& lambda, Rng& rng) {
  YoungDiagram d = lambda;
  ResIndStepper stepper;
  stepper.step(d, rng);
  return d;
}

int SmallChain::index_of(const YoungDiagram& d) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == d) return static_cast<int>(i);
  throw ConfigError("diagram " + d.to_string() + " is not in Y_" + std::to_string(n));
}

Eigen::VectorXd SmallChain::sigma_vector(const CyclePartition& rho) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) v(static_cast<Eigen::Index>(i)) = sigma(rho, states[i]);
  return v;
}

SmallChain full_matrix(int n) {
  if (n < 1 || n > 10) throw ConfigError("full_matrix supports 1 <= n <= 10");
  SmallChain c;
  c.n = n;
  c.states = partitions_of(n);
  const auto N = static_cast<Eigen::Index>(c.states.size());
  c.P = Eigen::MatrixXd::Zero(N, N);
  c.plancherel.resize(N);
  boost::multiprecision::cpp_int fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  for (Eigen::Index a = 0; a < N; ++a) {
    const auto& lambda = c.states[static_cast<std::size_t>(a)];
    const auto dim = dimension_exact(lambda);
    c.plancherel(a) = static_cast<double>(Rational(dim * dim) / Rational(fact));
    for (const auto& [nu, pd] : down_distribution(lambda).targets)
      for (const auto& [mu, pu] : up_distribution(nu, n).targets) c.P(a, c.index_of(mu)) += pd * pu;
  }
  return c;
}

double sigma_eigenvalue(int n, const CyclePartition& rho) {
  return 1.0 - static_cast<double>(rho.size() - rho.ones()) / n;
}

double eigen_identity_residual(const SmallChain& chain, const CyclePartition& rho) {
  if (rho.size() > chain.n) throw ConfigError("eigen identity needs |rho| <= n");
  const Eigen::VectorXd s = chain.sigma_vector(rho);
  return (chain.P * s - sigma_eigenvalue(chain.n, rho) * s).cwiseAbs().maxCoeff();
}

double eigen_identity_residual(int n, const CyclePartition& rho) {
  return eigen_identity_residual(full_matrix(n), rho);
}

void write_matrix_csv(std::ostream& os, const SmallChain& chain) {
  os << "from\\to";
  for (const auto& s : chain.states) os << ",\"" << s.to_string() << '"';
  os << '\n';
  char buf[40];
  for (std::size_t a = 0; a < chain.states.size(); ++a) {
    os << '"' << chain.states[a].to_string() << '"';
    for (std::size_t b = 0; b < chain.states.size(); ++b) {
      std::snprintf(buf, sizeof buf, ",%.17g", chain.P(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace yw
