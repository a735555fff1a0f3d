#include "youngwalk/characters.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include <Eigen/Dense>

#include "free_series.hpp"
#include "youngwalk/error.hpp"

namespace yw {

CyclePartition::CyclePartition(std::vector<int> p) : parts(std::move(p)) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw ConfigError("cycle parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1]) throw ConfigError("cycle parts must be weakly decreasing");
  }
}

CyclePartition CyclePartition::parse(std::string_view text) {
  return CyclePartition(YoungDiagram::parse(text).rows());
}

int CyclePartition::size() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

int CyclePartition::ones() const { return static_cast<int>(std::count(parts.begin(), parts.end(), 1)); }

CyclePartition CyclePartition::padded(int n) const {
  if (n < size()) throw ConfigError("cannot pad a cycle type to a smaller size");
  std::vector<int> p = parts;
  p.resize(parts.size() + static_cast<std::size_t>(n - size()), 1);
  return CyclePartition(std::move(p));
}

std::string CyclePartition::to_string() const { return YoungDiagram(parts).to_string(); }

namespace {

std::string memo_key(const std::vector<int>& rows, const std::vector<int>& parts, std::size_t from) {
  std::string key;
  key.reserve(4 * (rows.size() + parts.size()));
  for (int r : rows) {
    key += std::to_string(r);
    key += ',';
  }
  key += '|';
  for (std::size_t i = from; i < parts.size(); ++i) {
    key += std::to_string(parts[i]);
    key += ',';
  }
  return key;
}

// Rim-hook recursion on beta-sets (first-column hook lengths). Removing a rim
// hook of length k replaces some b by b-k; the sign counts the beta-numbers
// jumped over.
long long mn_recursive(const std::vector<int>& rows, const std::vector<int>& parts, std::size_t from) {
  if (from == parts.size()) return rows.empty() ? 1 : 0;
  thread_local std::unordered_map<std::string, long long> memo;
  const std::string key = memo_key(rows, parts, from);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const int l = static_cast<int>(rows.size());
  const int k = parts[from];
  std::vector<int> beta(rows.size());
  for (int i = 0; i < l; ++i) beta[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)] + (l - 1 - i);

  long long total = 0;
  for (int i = 0; i < l; ++i) {
    const int b = beta[static_cast<std::size_t>(i)];
    const int target = b - k;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int jumped = 0;
    for (int c : beta)
      if (c > target && c < b) ++jumped;
    std::vector<int> nb = beta;
    nb[static_cast<std::size_t>(i)] = target;
    std::sort(nb.begin(), nb.end(), std::greater<>());
    std::vector<int> nrows;
    for (int j = 0; j < l; ++j) {
      const int r = nb[static_cast<std::size_t>(j)] - (l - 1 - j);
      if (r > 0) nrows.push_back(r);
    }
    const long long sub = mn_recursive(nrows, parts, from + 1);
    total += (jumped % 2 ? -sub : sub);
  }
  memo.emplace(key, total);
  return total;
}

Rational falling_factorial(long long n, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

}  // namespace

long long mn_character(const YoungDiagram& lambda, const CyclePartition& rho) {
  if (lambda.size() != rho.size()) throw ConfigError("mn_character: |lambda| != |rho|");
  if (lambda.size() > 25) throw ConfigError("mn_character: |lambda| > 25 is outside the exact range");
  return mn_recursive(lambda.rows(), rho.parts, 0);
}

Rational sigma_exact(const CyclePartition& rho, const YoungDiagram& lambda) {
  const long long n = lambda.size();
  if (n < rho.size()) return Rational(0);
  const long long chi = mn_character(lambda, rho.padded(static_cast<int>(n)));
  return falling_factorial(n, rho.size()) * Rational(chi) / Rational(dimension_exact(lambda));
}

double sigma(const CyclePartition& rho, const YoungDiagram& lambda) {
  return static_cast<double>(sigma_exact(rho, lambda));
}

MomentSeq moments_from_cumulants(const CumulantSeq& R, int K) {
  if (K < 0) throw ConfigError("moment order must be >= 0");
  std::vector<double> r(R.values.size() + 1, 0.0);
  std::copy(R.values.begin(), R.values.end(), r.begin() + 1);
  return MomentSeq{detail::moments_from_cumulants(r, K)};
}

MomentSeq moments_from_cumulants(const CumulantSeq& R) { return moments_from_cumulants(R, R.order()); }

CumulantSeq cumulants_from_moments(const MomentSeq& M) {
  if (M.values.empty() || std::abs(M.values[0] - 1.0) > 1e-9) throw ConfigError("moment sequence must start with M_0 = 1");
  auto r = detail::cumulants_from_moments(M.values);
  return CumulantSeq{std::vector<double>(r.begin() + 1, r.end()), std::nullopt};
}

CumulantSeq free_cumulants(const YoungDiagram& lambda, int K) {
  return cumulants_from_moments(measure_moments(transition_measure(lambda), K));
}

std::vector<Rational> free_cumulants_exact(const YoungDiagram& lambda, int K) {
  const auto ic = interlacing(lambda);
  const auto Ks = static_cast<std::size_t>(K);
  std::vector<Rational> p(Ks + 1, Rational(0));
  for (std::size_t j = 1; j <= Ks; ++j) {
    boost::multiprecision::cpp_int s = 0;
    for (double x : ic.valleys) s += boost::multiprecision::pow(boost::multiprecision::cpp_int(static_cast<long long>(x)), static_cast<unsigned>(j));
    for (double y : ic.peaks) s -= boost::multiprecision::pow(boost::multiprecision::cpp_int(static_cast<long long>(y)), static_cast<unsigned>(j));
    p[j] = Rational(s);
  }
  std::vector<Rational> M(Ks + 1, Rational(0));
  M[0] = 1;
  for (std::size_t k = 1; k <= Ks; ++k) {
    Rational acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += p[j] * M[k - j];
    M[k] = acc / static_cast<long long>(k);
  }
  auto R = detail::cumulants_from_moments(M);
  return std::vector<Rational>(R.begin() + 1, R.end());
}

double KerovPolynomial::evaluate(const CumulantSeq& R) const {
  double s = 0.0;
  for (const auto& t : terms) {
    double v = static_cast<double>(t.coeff);
    for (int j : t.factors) v *= R.at(j);
    s += v;
  }
  return s;
}

Rational KerovPolynomial::evaluate(const std::vector<Rational>& R) const {
  Rational s(0);
  for (const auto& t : terms) {
    Rational v(t.coeff);
    for (int j : t.factors) v *= (static_cast<std::size_t>(j) <= R.size() ? R[static_cast<std::size_t>(j - 1)] : Rational(0));
    s += v;
  }
  return s;
}

std::string KerovPolynomial::to_string() const {
  std::ostringstream os;
  os << "Sigma_" << k << " =";
  bool first = true;
  for (const auto& t : terms) {
    os << (first ? " " : (t.coeff < 0 ? " - " : " + "));
    const long long c = first ? t.coeff : std::llabs(t.coeff);
    if (c != 1 || t.factors.empty()) os << c;
    for (int j : t.factors) os << "R" << j;
    first = false;
  }
  return os.str();
}

const KerovPolynomial& kerov_polynomial(int k) {
  static const std::map<int, KerovPolynomial> table = {
      {2, {2, {{1, {3}}}}},
      {3, {3, {{1, {4}}, {1, {2}}}}},
      {4, {4, {{1, {5}}, {5, {3}}}}},
      {5, {5, {{1, {6}}, {15, {4}}, {5, {2, 2}}, {8, {2}}}}},
      {6, {6, {{1, {7}}, {35, {5}}, {35, {3, 2}}, {84, {3}}}}},
  };
  auto it = table.find(k);
  if (it == table.end()) throw ConfigError("Kerov polynomials are available for 2 <= k <= 6 only");
  return it->second;
}

namespace {

// Multisets of indices in [2, top] (non-increasing) with weighted degree
// <= top and matching parity.
void enumerate_monomials(int top, int max_part, int degree, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if ((top - degree) % 2 == 0) out.push_back(cur);
  for (int j = std::min(max_part, top - degree); j >= 2; --j) {
    cur.push_back(j);
    enumerate_monomials(top, j, degree + j, cur, out);
    cur.pop_back();
  }
}

std::vector<YoungDiagram> diagrams_up_to(int max_size) {
  std::vector<YoungDiagram> all;
  for (int n = 0; n <= max_size; ++n) {
    auto ps = partitions_of(n);
    all.insert(all.end(), ps.begin(), ps.end());
  }
  return all;
}

}  // namespace

Rational kerov_max_residual(const KerovPolynomial& p, int max_size) {
  Rational worst(0);
  const CyclePartition cycle({p.k});
  for (const auto& lambda : diagrams_up_to(max_size)) {
    const auto R = free_cumulants_exact(lambda, p.k + 1);
    Rational diff = sigma_exact(cycle, lambda) - p.evaluate(R);
    if (diff < 0) diff = -diff;
    if (diff > worst) worst = diff;
  }
  return worst;
}

KerovPolynomial fit_kerov_polynomial(int k, int max_size) {
  if (k < 2) throw ConfigError("Kerov fit needs k >= 2");
  std::vector<std::vector<int>> monomials;
  std::vector<int> cur;
  enumerate_monomials(k + 1, k + 1, 0, cur, monomials);

  const auto diagrams = diagrams_up_to(max_size);
  const CyclePartition cycle({k});
  Eigen::MatrixXd A(static_cast<Eigen::Index>(diagrams.size()), static_cast<Eigen::Index>(monomials.size()));
  Eigen::VectorXd b(static_cast<Eigen::Index>(diagrams.size()));
  for (std::size_t r = 0; r < diagrams.size(); ++r) {
    const auto R = free_cumulants_exact(diagrams[r], k + 1);
    for (std::size_t c = 0; c < monomials.size(); ++c) {
      Rational v(1);
      for (int j : monomials[c]) v *= R[static_cast<std::size_t>(j - 1)];
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = static_cast<double>(v);
    }
    b(static_cast<Eigen::Index>(r)) = static_cast<double>(sigma_exact(cycle, diagrams[r]));
  }
  // Column scaling keeps the high-degree monomials from dominating the QR.
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < scale.size(); ++c)
    if (scale(c) == 0.0) scale(c) = 1.0;
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  const Eigen::VectorXd xs = As.colPivHouseholderQr().solve(b);

  KerovPolynomial poly;
  poly.k = k;
  for (std::size_t c = 0; c < monomials.size(); ++c) {
    const double coeff = xs(static_cast<Eigen::Index>(c)) / scale(static_cast<Eigen::Index>(c));
    const long long rounded = std::llround(coeff);
    if (rounded != 0) poly.terms.push_back({rounded, monomials[c]});
  }
  std::stable_sort(poly.terms.begin(), poly.terms.end(), [](const KerovTerm& a, const KerovTerm& b) {
    int da = 0, db = 0;
    for (int j : a.factors) da += j;
    for (int j : b.factors) db += j;
    if (da != db) return da > db;
    return a.factors > b.factors;
  });
  if (kerov_max_residual(poly, max_size) != 0)
    throw NumericError("rounded Kerov fit for k=" + std::to_string(k) + " is not exact");
  return poly;
}

double kerov_sigma(const YoungDiagram& lambda, int k) {
  const auto& p = kerov_polynomial(k);
  return p.evaluate(free_cumulants(lambda, k + 1));
}

double scaled_cumulant_estimate(const YoungDiagram& lambda, int k) {
  if (lambda.empty()) return 0.0;
  const double c = 1.0 / std::sqrt(static_cast<double>(lambda.size()));
  const auto mu = transition_measure(lambda).scaled(c);
  return cumulants_from_moments(measure_moments(mu, k + 1)).at(k + 1);
}

bool CumulantSeq::satisfies_growth_bound() const {
  if (!growth_bound) return true;
  for (int j = 1; j <= order(); ++j)
    if (std::abs(at(j)) > std::pow(*growth_bound, j) * (1.0 + 1e-12)) return false;
  return true;
}

CumulantSeq semicircle_cumulants(int K) {
  CumulantSeq R{std::vector<double>(static_cast<std::size_t>(std::max(K, 2)), 0.0), 1.0};
  R.values[1] = 1.0;
  R.values.resize(static_cast<std::size_t>(K));
  return R;
}

}  // namespace yw
