#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mick/basis_mic.hpp"
#include "mick/channels.hpp"
#include "mick/coords.hpp"
#include "mick/fd.hpp"
#include "mick/ks_duality.hpp"

namespace mick {

// Spectrum of the double singular oscillator: eps = hbar omega (N + d1 + d2 + 2).
inline double osc_energy(int N, const OscillatorParams& params, const Channel& ch) {
  if (N < 0)
    throw std::domain_error("osc_energy: requires N >= 0");
  params.validate();
  return params.hbar * params.omega *
         (N + ch.delta1() + ch.delta2() + 2.0);
}

namespace detail {

// At fixed omega the level-N member of the oscillator tower is the pullback
// of the bound state of an effective Coulomb strength e_eff^2 = eps_N / 4.
// The deltas depend only on (m, s, lambda), so the channel keeps its sector.
inline Channel effective_channel(int N, const OscillatorParams& params,
                                 const Channel& ch) {
  const double eps_osc = osc_energy(N, params, ch);
  Constants k = ch.constants();
  k.hbar = params.hbar;
  k.mass = params.mass;
  k.charge = std::sqrt(eps_osc / 4.0);
  return Channel(ch.s(), ch.m(), ch.lambda1(), ch.lambda2(), k);
}

} // namespace detail

// Oscillator eigenstate with spherical-type labels (N, L, M, M'), realised
// as 4(n+dbar) sqrt(a_eff) times the lifted spherical bound state.
class OscSphericalState {
public:
  OscSphericalState(const OscSphericalQN& q, const Channel& ch,
                    const OscillatorParams& params)
      : eff_(detail::effective_channel(q.N, params, ch)),
        qn_(correspondence_spherical(
            OscSphericalQN{q.N, q.L, q.M, q.Mprime}, eff_)),
        state_(qn_), lifted_(lift_wavefunction(state_, eff_.s())),
        amp_(normalised_amplitude(qn_.n, eff_)) {}

  Amplitude operator()(const Hyperspherical4& h) const { return amp_ * lifted_(h); }
  Amplitude operator()(const Cartesian4& u) const { return amp_ * lifted_(u); }

  const SphericalQN& bound_qn() const { return qn_; }
  const Channel& effective_channel() const { return eff_; }
  double amplitude_factor() const { return amp_; }

private:
  Channel eff_;
  SphericalQN qn_;
  SphericalState state_;
  LiftedState<SphericalState> lifted_;
  double amp_;
};

// Oscillator eigenstate with cylindrical labels (N1, N2, M1, M2), realised
// through the parabolic basis in double polar coordinates.
class OscCylindricalState {
public:
  OscCylindricalState(const OscCylindricalQN& q, const Channel& ch,
                      const OscillatorParams& params)
      : eff_(detail::effective_channel(q.N(), params, ch)),
        qn_(correspondence_parabolic(q, eff_)), state_(qn_),
        amp_(normalised_amplitude(qn_.n(), eff_)),
        s_(eff_.s().value()) {}

  Amplitude operator()(const DoublePolar4& d) const {
    if (d.rho1 <= 0.0 || d.rho2 <= 0.0)
      throw std::domain_error("oscillator state: point on a singular plane");
    const Parabolic3 p{2.0 * d.rho1 * d.rho1, 2.0 * d.rho2 * d.rho2,
                       d.phi1 + d.phi2};
    // e^{i(m+s)phi} e^{i s(gamma-phi)} = e^{i M1 phi1 + i M2 phi2}
    return amp_ * state_(p) * std::exp(Amplitude(0.0, s_ * (-2.0 * d.phi2))) /
           std::sqrt(4.0 * M_PI);
  }

  Amplitude operator()(const Cartesian4& u) const {
    return (*this)(cart4_to_doublepolar(u));
  }

  const ParabolicQN& bound_qn() const { return qn_; }
  const Channel& effective_channel() const { return eff_; }
  double amplitude_factor() const { return amp_; }

private:
  Channel eff_;
  ParabolicQN qn_;
  ParabolicState state_;
  double amp_;
  double s_;
};

inline Amplitude psi_osc_spherical(const OscSphericalQN& q,
                                   const Hyperspherical4& h, const Channel& ch,
                                   const OscillatorParams& params) {
  return OscSphericalState(q, ch, params)(h);
}

inline Amplitude psi_osc_cylindrical(const OscCylindricalQN& q,
                                     const DoublePolar4& d, const Channel& ch,
                                     const OscillatorParams& params) {
  return OscCylindricalState(q, ch, params)(d);
}

// Angular operator on the 3-sphere in Euler-like coordinates,
//   L^2 = -[ (1/sin b) d_b (sin b d_b)
//            + (1/sin^2 b)(d^2_a - 2 cos b d^2_{a g} + d^2_g) ],
// applied by finite differences to f(alpha, beta, gamma).
template <class F>
Amplitude apply_L2(F&& f, double alpha, double beta, double gamma,
                   double h = 1e-3) {
  if (beta < 10.0 * h || beta > M_PI - 10.0 * h)
    throw std::domain_error("apply_L2: beta too close to a pole");

  auto fb = [&](double b) { return f(alpha, b, gamma); };
  auto fa = [&](double a) { return f(a, beta, gamma); };
  auto fg = [&](double g) { return f(alpha, beta, g); };

  const Amplitude fbb = fd::d2_rich(fb, beta, h);
  const Amplitude fb1 = fd::d1_rich(fb, beta, h);
  const Amplitude faa = fd::d2_rich(fa, alpha, h);
  const Amplitude fgg = fd::d2_rich(fg, gamma, h);
  const Amplitude fag =
      fd::d2_mixed([&](double a, double g) { return f(a, beta, g); }, alpha,
                   gamma, h, h);

  const double sb = std::sin(beta);
  const double cb = std::cos(beta);
  return -(fbb + (cb / sb) * fb1 + (faa - 2.0 * cb * fag + fgg) / (sb * sb));
}

// Max relative residual of the double-singular-oscillator equation
//   [d^2/du_mu^2 + (2 mu/hbar^2)(eps - mu w^2 u^2/2
//                                - c1/(u0^2+u1^2) - c2/(u2^2+u3^2))] psi = 0
// over a sample set, with the 4D Laplacian by 4th-order differences.
// Normalised as |H psi - eps psi| / (|eps| max|psi|).
template <class State>
double osc_hamiltonian_residual(const State& psi, int N,
                                const OscillatorParams& params,
                                const Channel& ch,
                                const std::vector<Cartesian4>& samples,
                                double h_rel = 2e-3) {
  params.validate();
  const double eps_osc = osc_energy(N, params, ch);
  const double c1 = 2.0 * ch.lambda1();
  const double c2 = 2.0 * ch.lambda2();
  const double mu = params.mass;
  const double hbar = params.hbar;
  const double two_mu_h2 = 2.0 * mu / (hbar * hbar);

  const double u_scale = std::sqrt(2.0 * hbar / (mu * params.omega));

  double max_t = 0.0, max_psi = 0.0;
  for (const auto& u : samples) {
    const double h = h_rel * u_scale;
    Amplitude lap(0.0, 0.0);
    for (int axis = 0; axis < 4; ++axis) {
      auto f = [&](double v) {
        Cartesian4 w = u;
        w.set_component(axis, v);
        return psi(w);
      };
      lap += fd::d2_rich(f, u.component(axis), h);
    }
    const double rho1sq = u.u0 * u.u0 + u.u1 * u.u1;
    const double rho2sq = u.u2 * u.u2 + u.u3 * u.u3;
    const double pot = eps_osc -
                       0.5 * mu * params.omega * params.omega * u.norm2() -
                       c1 / rho1sq - c2 / rho2sq;
    const Amplitude t = lap + two_mu_h2 * pot * psi(u);
    max_t = std::max(max_t, std::abs(t));
    max_psi = std::max(max_psi, std::abs(psi(u)));
  }
  // residual of T psi = 0 converted to |H psi - eps psi|/(|eps| max|psi|)
  return max_t * (hbar * hbar / (2.0 * mu)) / (std::abs(eps_osc) * max_psi);
}

} // namespace mick
