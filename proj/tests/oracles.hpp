#pragma once

// Test-side oracles, deliberately independent of the library's evaluation
// paths: a series definition for the Jacobi polynomials and a tiny
// total-spin diagonalisation for Clebsch-Gordan spot values.

#include <array>
#include <cmath>

#include "mick/specfun.hpp"

namespace oracle {

// P_n^{(a,b)}(x) = Gamma(a+n+1)/(n! Gamma(a+b+n+1))
//                  * sum_{k=0}^n  C(n,k) Gamma(a+b+n+k+1)/Gamma(a+k+1) ((x-1)/2)^k
// Evaluated in extended precision: the sum alternates for x < 1 and loses
// digits in double when the terms outgrow the value.
inline double jacobi_series(int n, double a, double b, double x) {
  long double sum = 0.0L;
  const long double half = 0.5L * (static_cast<long double>(x) - 1.0L);
  for (int k = 0; k <= n; ++k) {
    const long double log_binom = std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) -
                                  std::lgamma(n - k + 1.0L);
    const long double log_term =
        log_binom + std::lgamma(static_cast<long double>(a) + b + n + k + 1.0L) -
        std::lgamma(static_cast<long double>(a) + k + 1.0L);
    sum += std::exp(log_term) * std::pow(half, static_cast<long double>(k));
  }
  const long double pref =
      std::exp(std::lgamma(static_cast<long double>(a) + n + 1.0L) -
               std::lgamma(n + 1.0L) -
               std::lgamma(static_cast<long double>(a) + b + n + 1.0L));
  return static_cast<double>(pref * sum);
}

// Two spin-1/2 particles: the m = 0 block of total J^2 in the product basis
// {up-down, down-up} is [[1,1],[1,1]] (units hbar^2). Diagonalising gives the
// triplet eigenvector and with it C^{1,0}_{1/2,1/2;1/2,-1/2}.
inline double cg_half_half_oracle() {
  const double h[2][2] = {{1.0, 1.0}, {1.0, 1.0}};
  // symmetric 2x2: eigenvalues via trace/det, eigenvector of the larger one
  const double tr = h[0][0] + h[1][1];
  const double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
  const double lam = 0.5 * tr + std::sqrt(0.25 * tr * tr - det); // = 2 = j(j+1)
  // (h - lam) v = 0  ->  v ~ (h01, lam - h00)
  double v0 = h[0][1], v1 = lam - h[0][0];
  const double nrm = std::sqrt(v0 * v0 + v1 * v1);
  v0 /= nrm;
  v1 /= nrm;
  // component of the triplet state on |up,down>, fixed positive by the
  // highest-weight ladder convention
  return v0 > 0 ? v0 : -v0;
}

} // namespace oracle
