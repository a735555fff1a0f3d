#pragma once

// Moment <-> free cumulant recursions, generic in the scalar type so the same
// code serves double and exact rational arithmetic.
//
// With M(z) = sum_k M_k z^k the relation is M(z) = 1 + sum_s R_s z^s M(z)^s.
// P[s][j] holds [z^j] M(z)^s and is filled one degree at a time.

#include <cstddef>
#include <vector>

namespace yw::detail {

// R is 1-based (R[0] ignored); returns M_0..M_K.
template <class T>
std::vector<T> moments_from_cumulants(const std::vector<T>& R, int K) {
  const auto Ks = static_cast<std::size_t>(K);
  std::vector<T> M(Ks + 1, T(0));
  std::vector<std::vector<T>> P(Ks + 1, std::vector<T>(Ks + 1, T(0)));
  M[0] = T(1);
  for (std::size_t s = 0; s <= Ks; ++s) P[s][0] = T(1);
  for (std::size_t k = 1; k <= Ks; ++k) {
    T mk(0);
    for (std::size_t s = 1; s <= k && s < R.size(); ++s) mk += R[s] * P[s][k - s];
    M[k] = mk;
    for (std::size_t s = 1; s <= Ks; ++s) {
      T acc(0);
      for (std::size_t i = 0; i <= k; ++i) acc += M[i] * P[s - 1][k - i];
      P[s][k] = acc;
    }
  }
  return M;
}

// M is 0-based with M[0] = 1; returns R 1-based (R[0] = 0).
template <class T>
std::vector<T> cumulants_from_moments(const std::vector<T>& M) {
  const std::size_t Ks = M.size() - 1;
  std::vector<T> R(Ks + 1, T(0));
  std::vector<std::vector<T>> P(Ks + 1, std::vector<T>(Ks + 1, T(0)));
  for (std::size_t s = 0; s <= Ks; ++s) P[s][0] = T(1);
  for (std::size_t k = 1; k <= Ks; ++k) {
    T rest(0);
    for (std::size_t s = 1; s < k; ++s) rest += R[s] * P[s][k - s];
    R[k] = M[k] - rest;
    for (std::size_t s = 1; s <= Ks; ++s) {
      T acc(0);
      for (std::size_t i = 0; i <= k; ++i) acc += M[i] * P[s - 1][k - i];
      P[s][k] = acc;
    }
  }
  return R;
}

}  // namespace yw::detail
