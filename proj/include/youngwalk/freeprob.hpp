#pragma once

#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

#include "youngwalk/sequences.hpp"
#include "youngwalk/simd.hpp"
#include "youngwalk/young.hpp"

namespace yw {

// Omega(x) = (2/pi)(x asin(x/2) + sqrt(4 - x^2)) on [-2, 2], |x| outside.
double vk_ls(double x);
// Piecewise-linear interpolant of Omega on `cells` cells, clustered at +-2.
ContinuousDiagram vk_ls_diagram(int cells = 4000);

// R_k(a) + R_k(b); the shorter sequence is padded with zeros.
CumulantSeq free_convolve(const CumulantSeq& a, const CumulantSeq& b);
// R_k -> c^{k-1} R_k for 0 < c <= 1.
CumulantSeq free_compress(const CumulantSeq& R, double c);

// Cumulants of omega_t: R_1 = 0, R_2 = 1, R_{k+1} = R_{k+1}(omega_0) e^{-kt/m}.
CumulantSeq omega_t_cumulants(const CumulantSeq& R0, double t, double m);
// The same law written as compress(R0, c) + compress(semicircle, 1 - c),
// c = e^{-t/m}.
CumulantSeq omega_t_composition(const CumulantSeq& R0, double t, double m);

// Three-term recurrence x p_j = p_{j+1} + a_j p_j + b_j^2 p_{j-1}.
// `b2[0]` is the total mass; b2[j] = b_j^2 for j >= 1. When `finite` is set the
// measure has exactly a.size() atoms; otherwise the fraction is continued
// with constant coefficients (a.back(), b2.back()).
struct JacobiCoefficients {
  std::vector<double> a;
  std::vector<double> b2;  // size a.size() + 1
  bool finite = false;

  simd::ContinuedFraction fraction() const;
  // Interval containing the support of the represented measure.
  std::pair<double, double> support_enclosure() const;
};

// Chebyshev algorithm in extended precision on M_0..M_{2L}.
JacobiCoefficients jacobi_coefficients(const MomentSeq& M);
// Same, with moments computed from the cumulants in 100-digit arithmetic.
// Uses moments up to `moment_order` (cumulants beyond R.order() are 0).
JacobiCoefficients jacobi_coefficients(const CumulantSeq& R, int moment_order);
// Coefficients for omega_t_cumulants(R0, t, m), evolved in wide precision.
JacobiCoefficients evolved_jacobi_coefficients(const CumulantSeq& R0, double t, double m, int moment_order);

std::complex<double> stieltjes(const JacobiCoefficients& J, std::complex<double> z);

// G of a finite atomic measure evolved for time parameter c = e^{-t/m}:
// solves z = zeta + (c-1)/G0(zeta) + (1-c) G0(zeta)/c and returns G0(zeta)/c.
std::complex<double> evolved_stieltjes(const AtomicMeasure& mu0, double c, std::complex<double> z);

struct InversionGrid {
  double left = -3.0;
  double right = 3.0;
  double step = 1e-3;
};

struct InversionResult {
  ContinuousDiagram shape;
  std::vector<double> x;
  std::vector<double> sigma_prime;  // (1/pi) Im log(zG) at x + i eps
  double anchor_deviation = 0.0;    // |zG - 1| at the left grid point
};

// With `extrapolate`, sigma' is combined from eps and eps/2 to cancel the
// first-order smoothing error.
InversionResult markov_inverse_detailed(const JacobiCoefficients& J, const InversionGrid& grid, double eps,
                                        bool extrapolate = true);
ContinuousDiagram markov_inverse(const MomentSeq& M, const InversionGrid& grid = {}, double eps = 1e-3);
// Convenience: diagram whose transition measure has cumulants R, using
// moments up to `moment_order`.
ContinuousDiagram markov_inverse(const CumulantSeq& R, const InversionGrid& grid = {}, double eps = 1e-3,
                                 int moment_order = 24);

struct LimitShapeSpec {
  CumulantSeq R0;
  double mean = 1.0;  // m of the exponential pauses
  int K = 12;         // cumulants kept in exports
  int moment_order = 24;
  InversionGrid grid;
  double eps = 1e-3;

  void validate() const;
};

// Rescaled limit of the aspect-a rectangle: atoms at -sqrt(a) and 1/sqrt(a)
// with weights 1/(1+a) and a/(1+a).
AtomicMeasure rectangle_limit_measure(double aspect);
CumulantSeq rectangle_limit_cumulants(double aspect, int K);

struct PdeGrid {
  std::vector<double> t;
  std::vector<std::complex<double>> z;
};

// max |m G_t + G G_z - G_z/G - G| with centred differences of step h; G from
// omega_t_cumulants and the continued fraction.
double pde_residual(const CumulantSeq& R0, double m, const PdeGrid& grid, double h = 1e-3, int moment_order = 48);

// Theta(w) = 1 + (1/2) int int_{s>t} (1 - w'(s))(1 + w'(t)) log(s - t) ds dt,
// exact on each pair of linear cells.
double theta_energy(const ContinuousDiagram& w);

void write_cumulants_csv(std::ostream& os, const CumulantSeq& R);
void write_shape_csv(std::ostream& os, const InversionResult& r);

}  // namespace yw
