#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mick/channels.hpp"
#include "mick/halfint.hpp"
#include "mick/ks_duality.hpp"
#include "mick/specfun.hpp"

namespace mick {

// Index bundle of the 4D expansion coefficient W^{NLMM'}_{N1 N2 M1 M2}.
// With M = (M1+M2)/2 and M' = (M1-M2)/2 one has M - M' = M2, M + M' = M1.
struct W4DIndices {
  double a0 = 0, alpha0 = 0, b0 = 0, beta0 = 0, c0 = 0, gamma0 = 0;
  HalfInt L_min;
  double Phi = 0;
};

inline W4DIndices w4_indices(const OscCylindricalQN& q, const Channel& ch,
                             HalfInt L) {
  const double aM1 = static_cast<double>(std::llabs(q.M1));
  const double aM2 = static_cast<double>(std::llabs(q.M2));
  const double d1 = ch.delta1(), d2 = ch.delta2();
  W4DIndices w;
  w.a0 = 0.5 * (q.N1 + q.N2 + aM2 + d2);
  w.alpha0 = 0.5 * (q.N2 - q.N1 + aM2 + d2);
  w.b0 = 0.5 * (q.N1 + q.N2 + aM1 + d1);
  w.beta0 = 0.5 * (q.N1 - q.N2 + aM1 + d1);
  w.c0 = L.value() + ch.delta_bar();
  w.gamma0 = 0.5 * (aM1 + aM2 + d1 + d2);
  w.L_min = HalfInt::from_twice(std::llabs(q.M1) - std::llabs(q.M2));
  w.Phi = q.N1 + 0.5 * (q.M2 + aM2); // N1 + max(M - M', 0)
  return w;
}

namespace detail {

// The six continued Clebsch-Gordan arguments behind both expansions. The
// delta_2-shifted pair carries |m-s| and the delta_1-shifted pair |m+s|,
// which keeps a - alpha = n1, b - beta = n2, c - gamma = j - m_plus as the
// integer slots that terminate the Racah sum for every admissible state.
struct CgArgs {
  double a, alpha, b, beta, c, gamma;
};

inline CgArgs w3_args(int n1, int n2, const Channel& ch, HalfInt j,
                      bool swap_mminus) {
  const double n = ParabolicQN(n1, n2, ch).n().value();
  const double mm = ch.m_minus().value();
  const double sign = swap_mminus ? 1.0 : -1.0;
  CgArgs g{};
  g.a = 0.5 * (n + sign * mm + ch.delta2() - 1.0);
  g.alpha = 0.5 * (ch.m2() + n2 - n1);
  g.b = 0.5 * (n - sign * mm + ch.delta1() - 1.0);
  g.beta = 0.5 * (ch.m1() + n1 - n2);
  g.c = j.value() + ch.delta_bar();
  g.gamma = 0.5 * (ch.m1() + ch.m2());
  return g;
}

} // namespace detail

// Expansion coefficient of the parabolic basis over the spherical one:
//   W = (-1)^{n1} C^{j+dbar, (m1+m2)/2}_{a,alpha; b,beta}.
inline double w3(int n1, int n2, const Channel& ch, HalfInt j) {
  const auto g = detail::w3_args(n1, n2, ch, j, false);
  const double cg = specfun::cg_real(g.a, g.alpha, g.b, g.beta, g.c, g.gamma);
  return (n1 % 2 == 0) ? cg : -cg;
}

// Same coefficient with m_minus placed the other way round in the lower
// pair; kept as a diagnostic so verification can flag which placement the
// quadrature overlaps actually support.
inline double w3_swapped(int n1, int n2, const Channel& ch, HalfInt j) {
  const auto g = detail::w3_args(n1, n2, ch, j, true);
  const double cg = specfun::cg_real(g.a, g.alpha, g.b, g.beta, g.c, g.gamma);
  return (n1 % 2 == 0) ? cg : -cg;
}

// 4D coefficient W^{NLMM'}_{N1 N2 M1 M2} = e^{i pi Phi} C_{a0,alpha0; b0,beta0}^{c0,gamma0};
// Phi is an integer on admissible states so the value is real.
inline double w4(const OscCylindricalQN& q, const Channel& ch, HalfInt L) {
  const auto w = w4_indices(q, ch, L);
  const double cg =
      specfun::cg_real(w.a0, w.alpha0, w.b0, w.beta0, w.c0, w.gamma0);
  const long long phi = std::llround(w.Phi);
  return (phi % 2 == 0) ? cg : -cg;
}

// Coefficient list (j, W) with j = m_plus ... n-1.
inline std::vector<std::pair<HalfInt, double>>
expand_parabolic_in_spherical(const ParabolicQN& qn) {
  std::vector<std::pair<HalfInt, double>> out;
  const HalfInt n = qn.n();
  for (HalfInt j = qn.channel.m_plus(); j <= n - 1; j = j + 1)
    out.emplace_back(j, w3(qn.n1, qn.n2, qn.channel, j));
  return out;
}

// Coefficient list (L, W) with L = L_min ... N/2; entries below the lowest
// admissible L vanish identically.
inline std::vector<std::pair<HalfInt, double>>
expand_cylindrical_in_spherical4d(const OscCylindricalQN& q, const Channel& ch) {
  std::vector<std::pair<HalfInt, double>> out;
  const HalfInt lmin = w4_indices(q, ch, HalfInt::whole(0)).L_min;
  const HalfInt lmax = HalfInt::from_twice(q.N()); // N/2
  for (HalfInt L = lmin; L <= lmax; L = L + 1)
    out.emplace_back(L, w4(q, ch, L));
  return out;
}

} // namespace mick
