#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "youngwalk/sampling.hpp"

namespace yw {

// f(k, n, s) = E[(1 - k/n)^{N_s}].
struct KernelQuery {
  int k = 2;
  long long n = 2;
  double s = 0.0;
  PausingLaw law = Exponential{};

  void validate() const;
};

struct KernelValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

// e^{-(s/m)(k/n)}.
double f_exponential(const KernelQuery& q);

// Real single-integral form for one-sided stable pauses. For alpha = 1/2 the
// integral is taken in the rescaled variable y (period 2 pi n in y).
KernelValue f_stable_quadrature(const KernelQuery& q);

// The alpha = 1/2 integrand integrated over (0, upper) only.
double f_half_stable_truncated(int k, long long n, double s, double upper);

using CharacteristicFn = std::function<std::complex<double>(double)>;

// Fourier inversion of the renewal generating function:
//   f = 1/2 + (1/pi) int_0^inf Im[(k/n) e^{-i xi s} phi / (xi (1 - q phi))] d xi,
// q = 1 - k/n, valid for pausing laws without atoms and s > 0 (s = 0 gives 1).
KernelValue f_fourier_inversion(const KernelQuery& q, const CharacteristicFn& phi);
// Uses the query's own law; rejects laws with atoms.
KernelValue f_fourier_inversion(const KernelQuery& q);

// g_alpha(u) = sin(pi a)/(pi a) int_0^inf exp(-u (xi cos(pi a/2))^{1/a}) / (xi^2 + 2 xi cos(pi a) + 1) d xi.
double g_alpha(double u, double alpha);
// Leading behaviour for large u: 2 sin(pi a/2) Gamma(a) / (pi u^a).
double g_alpha_asymptote(double u, double alpha);

enum class Regime { sub, super, critical };
Regime parse_regime(const std::string& s);
std::string to_string(Regime r);

// Limit of f(k, n, t theta_n) for stable pauses.
double prop_limits(int k, double t, double alpha, Regime regime);
// Limit of f(k, n, tn) for exponential pauses of mean m.
double prop_limit_exponential(int k, double t, double m);

// g(t (2 k r)^{1/a}) - g(t (k r)^{1/a})^2 with r = mrep.
double factorization_defect_main_term(int k, int mrep, double t, double alpha);

struct KernelRow {
  int k;
  long long n;
  double s;
  std::string method;
  KernelValue v;
};
void write_kernel_table_csv(std::ostream& os, const std::vector<KernelRow>& rows);

}  // namespace yw
