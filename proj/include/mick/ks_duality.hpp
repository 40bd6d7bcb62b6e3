#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mick/basis_mic.hpp"
#include "mick/channels.hpp"
#include "mick/coords.hpp"

namespace mick {

struct OscillatorParams {
  double omega = 0.0;
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(omega > 0.0) || !(hbar > 0.0) || !(mass > 0.0))
      throw std::domain_error("OscillatorParams: omega, hbar, mass must be > 0");
  }
};

// Frequency dual to the level n of a channel:
//   omega = 2 e^2 / (hbar (n + dbar)),
// so that -mu omega^2/8 = E_n and hbar omega (N + d1 + d2 + 2) = 4 e^2
// with N = 2(n-1).
inline OscillatorParams osc_params_from_level(HalfInt n, const Channel& ch) {
  detail::require_level(n, ch);
  const auto& k = ch.constants();
  const double nu = n.value() + ch.delta_bar();
  return {2.0 * k.charge * k.charge / (k.hbar * nu), k.hbar, k.mass};
}

// 4(n + dbar) sqrt(a), the amplitude relating the oscillator state to the
// lifted bound state.
inline double correspondence_amplitude(HalfInt n, const Channel& ch) {
  detail::require_level(n, ch);
  const double nu = n.value() + ch.delta_bar();
  return 4.0 * nu * std::sqrt(ch.constants().bohr_radius());
}

// 4(n + dbar) a: the amplitude that makes the pullback an exactly
// unit-normalised 4D state for any frequency and units. It coincides with
// correspondence_amplitude whenever the effective Bohr radius is 1, which
// is the regime the bare 4(n+dbar) sqrt(a) display presumes.
inline double normalised_amplitude(HalfInt n, const Channel& ch) {
  detail::require_level(n, ch);
  const double nu = n.value() + ch.delta_bar();
  return 4.0 * nu * ch.constants().bohr_radius();
}

// psi(r, gamma) = psi^{(s)}(r) e^{i s (gamma - phi)} / sqrt(4 pi).
// Single-valued on R^4 for half-integer s because gamma has period 4 pi.
// Psi3 is any evaluator of a fixed-s bound state on Spherical3.
template <class Psi3> class LiftedState {
public:
  LiftedState(Psi3 psi3, HalfInt s) : psi3_(std::move(psi3)), s_(s.value()) {}

  // gamma supplied independently (for d/dgamma probes)
  Amplitude operator()(const Spherical3& p, double gamma) const {
    return psi3_(p) * phase(gamma - p.phi);
  }

  Amplitude operator()(const Hyperspherical4& h) const {
    const Spherical3 p{h.u * h.u, h.beta, h.alpha};
    return psi3_(p) * phase(h.gamma - h.alpha);
  }

  // Cartesian evaluation keeps the fibre phase continuous across the atan2
  // branch by using gamma - phi = -2 phi2 directly.
  Amplitude operator()(const Cartesian4& u) const {
    const double rho1sq = u.u0 * u.u0 + u.u1 * u.u1;
    const double rho2sq = u.u2 * u.u2 + u.u3 * u.u3;
    if (s_ != 0.0 && (rho1sq == 0.0 || rho2sq == 0.0))
      throw std::domain_error("lifted state: phase undefined on a degenerate axis");
    const auto ks = ks_forward(u);
    const Spherical3 p = cart3_to_spherical(ks.p);
    const double phi2 = std::atan2(u.u3, u.u2);
    return psi3_(p) * phase(-2.0 * phi2);
  }

private:
  Amplitude phase(double angle) const {
    return std::exp(Amplitude(0.0, s_ * angle)) / std::sqrt(4.0 * M_PI);
  }

  Psi3 psi3_;
  double s_;
};

template <class Psi3> LiftedState<Psi3> lift_wavefunction(Psi3 psi3, HalfInt s) {
  return LiftedState<Psi3>(std::move(psi3), s);
}

// Quantum-number dictionaries between the oscillator labels and the bound
// system. The spherical-type map is n = N/2 + 1, j = L, m = M, s = M'; the
// ladder constraint N/2 - L in {0,1,...} enforces the parity rule (even N
// for integer channels, odd N for half-integer ones).
struct OscSphericalQN {
  int N = 0;
  HalfInt L, M, Mprime;
};

struct OscCylindricalQN {
  int N1 = 0, N2 = 0;
  long long M1 = 0, M2 = 0;

  int N() const {
    return 2 * N1 + 2 * N2 + static_cast<int>(std::llabs(M1) + std::llabs(M2));
  }
};

inline SphericalQN correspondence_spherical(const OscSphericalQN& q,
                                            const Channel& ch) {
  if (q.M != ch.m() || q.Mprime != ch.s())
    throw std::domain_error("correspondence: (M, M') must equal the channel (m, s)");
  if (q.N < 0)
    throw std::domain_error("correspondence: requires N >= 0");
  if ((q.N - q.L.twice()) % 2 != 0)
    throw std::domain_error(
        "correspondence: parity rule N = 2(n-1) violated (N/2 - L must be an integer)");
  const HalfInt n = HalfInt::from_twice(q.N + 2); // n = N/2 + 1
  return SphericalQN(n, q.L, ch);
}

inline OscSphericalQN correspondence_spherical_inverse(const SphericalQN& qn) {
  OscSphericalQN q;
  q.N = static_cast<int>(qn.n.twice() - 2);
  q.L = qn.j;
  q.M = qn.channel.m();
  q.Mprime = qn.channel.s();
  return q;
}

inline ParabolicQN correspondence_parabolic(const OscCylindricalQN& q,
                                            const Channel& ch) {
  const HalfInt m = HalfInt::from_twice(q.M1 + q.M2); // (M1+M2)/2
  const HalfInt s = HalfInt::from_twice(q.M1 - q.M2); // (M1-M2)/2
  if (m != ch.m() || s != ch.s())
    throw std::domain_error(
        "correspondence: (M1+M2)/2 and (M1-M2)/2 must equal the channel (m, s)");
  return ParabolicQN(q.N1, q.N2, ch);
}

inline OscCylindricalQN correspondence_parabolic_inverse(const ParabolicQN& qn) {
  OscCylindricalQN q;
  q.N1 = qn.n1;
  q.N2 = qn.n2;
  q.M1 = (qn.channel.m() + qn.channel.s()).as_integer();
  q.M2 = (qn.channel.m() - qn.channel.s()).as_integer();
  return q;
}

} // namespace mick
