#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "youngwalk/sequences.hpp"
#include "youngwalk/young.hpp"

namespace yw {

using Rational = boost::multiprecision::cpp_rational;

// Cycle type as weakly decreasing positive parts.
struct CyclePartition {
  std::vector<int> parts;

  CyclePartition() = default;
  explicit CyclePartition(std::vector<int> p);
  static CyclePartition parse(std::string_view text);

  int size() const;
  int length() const { return static_cast<int>(parts.size()); }
  int ones() const;  // m_1
  // Pads with 1-cycles up to total size n.
  CyclePartition padded(int n) const;
  std::string to_string() const;
};

// chi^lambda at the class rho, by rim-hook removal. Requires |lambda| = |rho|
// and |lambda| <= 25.
long long mn_character(const YoungDiagram& lambda, const CyclePartition& rho);

// Sigma_rho(lambda) = |lambda|^{down |rho|} chi^lambda_{rho,1..1} / dim lambda,
// or 0 when |lambda| < |rho|.
Rational sigma_exact(const CyclePartition& rho, const YoungDiagram& lambda);
double sigma(const CyclePartition& rho, const YoungDiagram& lambda);

// Free moment-cumulant conversion (non-crossing partition relation).
MomentSeq moments_from_cumulants(const CumulantSeq& R, int K);
MomentSeq moments_from_cumulants(const CumulantSeq& R);
CumulantSeq cumulants_from_moments(const MomentSeq& M);

// R_1..R_K of the transition measure of lambda.
CumulantSeq free_cumulants(const YoungDiagram& lambda, int K);
std::vector<Rational> free_cumulants_exact(const YoungDiagram& lambda, int K);

// Polynomial in free cumulants: sum of coeff * prod R_{factors}.
struct KerovTerm {
  long long coeff;
  std::vector<int> factors;  // indices j >= 2, non-increasing; empty = constant
};

struct KerovPolynomial {
  int k = 0;
  std::vector<KerovTerm> terms;

  double evaluate(const CumulantSeq& R) const;
  Rational evaluate(const std::vector<Rational>& R) const;  // R[j-1] = R_j
  std::string to_string() const;
};

// Stored coefficients for k = 2..6, established by fit_kerov_polynomial.
const KerovPolynomial& kerov_polynomial(int k);

// Least-squares fit of Sigma_k over all diagrams with |lambda| <= max_size
// against monomials of matching weighted degree, rounded to integers and then
// checked exactly in rational arithmetic. Throws NumericError if the rounded
// polynomial is not exact on every diagram.
KerovPolynomial fit_kerov_polynomial(int k, int max_size = 12);

// Largest |Sigma_k - polynomial| over |lambda| <= max_size, computed exactly.
Rational kerov_max_residual(const KerovPolynomial& p, int max_size);

// Sigma_k(lambda) through the stored polynomial; k in 2..6.
double kerov_sigma(const YoungDiagram& lambda, int k);

// R_{k+1}(m_lambda) * n^{-(k+1)/2}; 0 for the empty diagram.
double scaled_cumulant_estimate(const YoungDiagram& lambda, int k);

}  // namespace yw
