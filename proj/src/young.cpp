#include "youngwalk/young.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "youngwalk/error.hpp"
#include "youngwalk/simd.hpp"

namespace yw {

YoungDiagram::YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] <= 0) throw ConfigError("partition rows must be positive");
    if (i > 0 && rows_[i] > rows_[i - 1]) throw ConfigError("partition rows must be weakly decreasing");
    size_ += rows_[i];
  }
}

int YoungDiagram::multiplicity(int j) const {
  return static_cast<int>(std::count(rows_.begin(), rows_.end(), j));
}

void YoungDiagram::add_box(int i) {
  if (i < 0 || i > length()) throw ConfigError("add_box: row out of range");
  if (i > 0 && row(i - 1) <= row(i)) throw ConfigError("add_box: not an addable corner");
  if (i == length()) {
    rows_.push_back(1);
  } else {
    ++rows_[static_cast<std::size_t>(i)];
  }
  ++size_;
}

void YoungDiagram::remove_box(int i) {
  if (i < 0 || i >= length()) throw ConfigError("remove_box: row out of range");
  if (row(i) <= row(i + 1)) throw ConfigError("remove_box: not a removable corner");
  if (--rows_[static_cast<std::size_t>(i)] == 0) rows_.pop_back();
  --size_;
}

YoungDiagram YoungDiagram::conjugate() const {
  std::vector<int> cols(rows_.empty() ? 0 : static_cast<std::size_t>(rows_[0]), 0);
  for (int r : rows_)
    for (int j = 0; j < r; ++j) ++cols[static_cast<std::size_t>(j)];
  return YoungDiagram(std::move(cols));
}

std::string YoungDiagram::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(rows_[i]);
  }
  return s;
}

YoungDiagram YoungDiagram::parse(std::string_view text) {
  std::vector<int> rows;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
  };
  skip_space();
  if (pos < text.size() && text[pos] == '(') ++pos;
  while (true) {
    skip_space();
    if (pos >= text.size() || text[pos] == ')') break;
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc()) throw ConfigError("cannot parse partition '" + std::string(text) + "'");
    rows.push_back(v);
    pos = static_cast<std::size_t>(ptr - text.data());
    skip_space();
    if (pos < text.size() && text[pos] == ',') ++pos;
  }
  return YoungDiagram(std::move(rows));
}

std::ostream& operator<<(std::ostream& os, const YoungDiagram& d) {
  return os << '(' << d.to_string() << ')';
}

std::vector<Corner> removable_corners(const YoungDiagram& d) {
  if (d.empty()) throw ConfigError("no boxes");
  std::vector<Corner> out;
  for (int i = 0; i < d.length(); ++i)
    if (d.row(i) > d.row(i + 1)) out.push_back({i, d.row(i) - (i + 1)});
  return out;
}

std::vector<Corner> addable_corners(const YoungDiagram& d) {
  std::vector<Corner> out;
  for (int i = 0; i <= d.length(); ++i)
    if (i == 0 || d.row(i - 1) > d.row(i)) out.push_back({i, d.row(i) - i});
  return out;
}

namespace {

template <class F>
void for_each_hook(const YoungDiagram& d, F&& f) {
  const auto& rows = d.rows();
  std::vector<int> cols(rows.empty() ? 0 : static_cast<std::size_t>(rows[0]), 0);
  for (int r : rows)
    for (int j = 0; j < r; ++j) ++cols[static_cast<std::size_t>(j)];
  for (int i = 0; i < d.length(); ++i)
    for (int j = 0; j < rows[static_cast<std::size_t>(i)]; ++j)
      f(rows[static_cast<std::size_t>(i)] - j + cols[static_cast<std::size_t>(j)] - i - 1);
}

}  // namespace

double log_dimension(const YoungDiagram& d) {
  double s = 0.0;
  for (long long k = 2; k <= d.size(); ++k) s += std::log(static_cast<double>(k));
  for_each_hook(d, [&](int h) { s -= std::log(static_cast<double>(h)); });
  return s;
}

boost::multiprecision::cpp_int dimension_exact(const YoungDiagram& d) {
  boost::multiprecision::cpp_int v = 1;
  for (long long k = 2; k <= d.size(); ++k) v *= k;
  for_each_hook(d, [&](int h) { v /= h; });
  return v;
}

InterlacingCoordinates interlacing(const YoungDiagram& d) {
  InterlacingCoordinates ic;
  for (const auto& c : addable_corners(d)) ic.valleys.push_back(c.content);
  if (!d.empty())
    for (const auto& c : removable_corners(d)) ic.peaks.push_back(c.content);
  std::reverse(ic.valleys.begin(), ic.valleys.end());
  std::reverse(ic.peaks.begin(), ic.peaks.end());
  return ic;
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ConfigError("atomic measure needs at least one atom");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].weight > 0.0) || atoms_[i].weight > 1.0 + 1e-12)
      throw NumericError("atom weight outside (0,1]");
    if (i > 0 && !(atoms_[i].location > atoms_[i - 1].location))
      throw ConfigError("atom locations must be strictly increasing");
    total += atoms_[i].weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw NumericError("atom weights do not sum to 1");
}

AtomicMeasure AtomicMeasure::scaled(double c) const {
  std::vector<Atom> a = atoms_;
  for (auto& at : a) at.location *= c;
  if (c < 0) std::reverse(a.begin(), a.end());
  return AtomicMeasure(std::move(a));
}

AtomicMeasure transition_measure(const YoungDiagram& d) {
  const auto ic = interlacing(d);
  std::vector<double> w(ic.valleys.size());
  simd::active().valley_weights(ic.valleys, ic.peaks, w);
  double total = 0.0;
  for (double v : w) {
    if (!(v > 0.0)) throw NumericError("transition measure weight not positive");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw NumericError("transition measure weights drifted from 1");
  std::vector<Atom> atoms(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) atoms[i] = {ic.valleys[i], w[i] / total};
  return AtomicMeasure(std::move(atoms));
}

MomentSeq measure_moments(const AtomicMeasure& mu, int K) {
  if (K < 0) throw ConfigError("moment order must be >= 0");
  std::vector<double> x, w;
  for (const auto& a : mu.atoms()) {
    x.push_back(a.location);
    w.push_back(a.weight);
  }
  MomentSeq m{std::vector<double>(static_cast<std::size_t>(K) + 1)};
  simd::active().power_sums(x, w, m.values);
  return m;
}

ContinuousDiagram::ContinuousDiagram() : x_{0.0}, w_{0.0} {}

ContinuousDiagram::ContinuousDiagram(std::vector<double> x, std::vector<double> omega)
    : x_(std::move(x)), w_(std::move(omega)) {
  if (x_.empty() || x_.size() != w_.size()) throw ConfigError("diagram breakpoints malformed");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw ConfigError("diagram breakpoints must be strictly increasing");
  if (x_.front() > 0.0 || x_.back() < 0.0) throw ConfigError("diagram support must contain 0");
  for (std::size_t e : {std::size_t{0}, x_.size() - 1}) {
    if (std::abs(w_[e] - std::abs(x_[e])) > 1e-9 * (1.0 + std::abs(x_[e])))
      throw ConfigError("diagram must equal |x| at the support endpoints");
    w_[e] = std::abs(x_[e]);
  }
}

double ContinuousDiagram::operator()(double x) const {
  if (x <= x_.front() || x >= x_.back()) return std::abs(x);
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin());
  const double t = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
  return w_[i - 1] + t * (w_[i] - w_[i - 1]);
}

double ContinuousDiagram::area() const {
  double s = 0.0;
  auto cell = [&](double a, double b) {
    s += 0.5 * (b - a) * (((*this)(a) - std::abs(a)) + ((*this)(b) - std::abs(b)));
  };
  for (std::size_t i = 1; i < x_.size(); ++i) {
    const double a = x_[i - 1], b = x_[i];
    if (a < 0.0 && b > 0.0) {
      cell(a, 0.0);
      cell(0.0, b);
    } else {
      cell(a, b);
    }
  }
  return s;
}

double ContinuousDiagram::max_slope() const {
  double m = 1.0;
  for (std::size_t i = 1; i < x_.size(); ++i)
    m = std::max(m, std::abs((w_[i] - w_[i - 1]) / (x_[i] - x_[i - 1])));
  return m;
}

bool ContinuousDiagram::is_valid(double tol) const {
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (std::abs(w_[i] - w_[i - 1]) > (x_[i] - x_[i - 1]) * (1.0 + tol)) return false;
  return true;
}

std::vector<double> ContinuousDiagram::kerov_power_sums(int K) const {
  std::vector<double> loc(x_.size()), jump(x_.size());
  double left = -1.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const double right = i + 1 < x_.size() ? (w_[i + 1] - w_[i]) / (x_[i + 1] - x_[i]) : 1.0;
    loc[i] = x_[i];
    jump[i] = 0.5 * (right - left);
    left = right;
  }
  std::vector<double> p(static_cast<std::size_t>(K) + 1);
  simd::active().power_sums(loc, jump, p);
  return p;
}

ContinuousDiagram profile(const YoungDiagram& d) {
  const auto ic = interlacing(d);
  std::vector<double> x, w;
  double cur = std::abs(ic.valleys.front());
  x.push_back(ic.valleys.front());
  w.push_back(cur);
  for (std::size_t j = 0; j < ic.peaks.size(); ++j) {
    cur += ic.peaks[j] - x.back();
    x.push_back(ic.peaks[j]);
    w.push_back(cur);
    cur -= ic.valleys[j + 1] - x.back();
    x.push_back(ic.valleys[j + 1]);
    w.push_back(cur);
  }
  return ContinuousDiagram(std::move(x), std::move(w));
}

ContinuousDiagram rescaled_profile(const YoungDiagram& d, long long n) {
  if (n < 1) throw ConfigError("rescaling size must be >= 1");
  const ContinuousDiagram p = profile(d);
  const double c = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> x = p.xs(), w = p.omegas();
  for (auto& v : x) v *= c;
  for (auto& v : w) v *= c;
  return ContinuousDiagram(std::move(x), std::move(w));
}

double sup_distance(const ContinuousDiagram& a, const ContinuousDiagram& b) {
  std::vector<double> mesh = a.xs();
  mesh.insert(mesh.end(), b.xs().begin(), b.xs().end());
  mesh.push_back(0.0);
  double m = 0.0;
  for (double x : mesh) m = std::max(m, std::abs(a(x) - b(x)));
  return m;
}

MomentSeq transition_moments(const ContinuousDiagram& w, int K) {
  if (K < 0) throw ConfigError("moment order must be >= 0");
  const auto p = w.kerov_power_sums(K);
  MomentSeq m{std::vector<double>(static_cast<std::size_t>(K) + 1, 0.0)};
  m.values[0] = 1.0;
  for (int k = 1; k <= K; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += p[static_cast<std::size_t>(j)] * m.values[static_cast<std::size_t>(k - j)];
    m.values[static_cast<std::size_t>(k)] = s / k;
  }
  return m;
}

void write_profile_csv(std::ostream& os, const ContinuousDiagram& w) {
  os << "x,omega_x\n";
  char buf[64];
  for (std::size_t i = 0; i < w.xs().size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", w.xs()[i], w.omegas()[i]);
    os << buf;
  }
}

std::vector<YoungDiagram> read_partitions(std::istream& is) {
  std::vector<YoungDiagram> out;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out.push_back(YoungDiagram::parse(line));
  }
  return out;
}

void write_partitions(std::ostream& os, const std::vector<YoungDiagram>& ds) {
  for (const auto& d : ds) os << d.to_string() << '\n';
}

std::vector<YoungDiagram> partitions_of(int n) {
  if (n < 0) throw ConfigError("partition size must be >= 0");
  std::vector<YoungDiagram> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> a{n};
  while (true) {
    out.emplace_back(a);
    // Rightmost part greater than 1.
    int i = static_cast<int>(a.size()) - 1;
    while (i >= 0 && a[static_cast<std::size_t>(i)] == 1) --i;
    if (i < 0) break;
    int rem = static_cast<int>(a.size()) - i;  // ones after i, plus the unit taken from a[i]
    const int v = --a[static_cast<std::size_t>(i)];
    a.resize(static_cast<std::size_t>(i) + 1);
    while (rem > 0) {
      const int part = std::min(v, rem);
      a.push_back(part);
      rem -= part;
    }
  }
  return out;
}

}  // namespace yw
