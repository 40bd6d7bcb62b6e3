#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "mick/halfint.hpp"

namespace mick {

struct Constants {
  double hbar = 1.0;
  double mass = 1.0;   // the reduced mass
  double charge = 1.0; // e, entering the Coulomb term as e^2/r

  double bohr_radius() const { return hbar * hbar / (mass * charge * charge); }

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0) || !(charge > 0.0))
      throw std::domain_error("Constants: hbar, mass, charge must be > 0");
  }
};

// The (s, m, lambda1, lambda2) sector. Everything downstream — polynomial
// degrees, fractional exponents, spectra — depends on the channel only
// through the derived quantities cached here:
//   m_plus/minus = (|m+s| +/- |m-s|)/2
//   m_i = |m +/- s| + delta_i = sqrt((m +/- s)^2 + 4 mu lambda_i / hbar^2)
class Channel {
public:
  Channel(HalfInt s, HalfInt m, double lambda1, double lambda2,
          Constants constants = {})
      : s_(s), m_(m), lambda1_(lambda1), lambda2_(lambda2), k_(constants) {
    k_.validate();
    if (lambda1 < 0.0 || lambda2 < 0.0)
      throw std::domain_error("Channel: lambda1, lambda2 must be >= 0");
    if (((s.twice() + m.twice()) % 2) != 0)
      throw std::domain_error(
          "Channel: 2m and 2s must be integers of equal parity");

    const HalfInt mps = (m_ + s_).abs(); // |m+s|, an integer
    const HalfInt mms = (m_ - s_).abs(); // |m-s|, an integer
    m_plus_ = HalfInt::from_twice((mps.twice() + mms.twice()) / 2);
    m_minus_ = HalfInt::from_twice((mps.twice() - mms.twice()) / 2);
    delta1_ = delta_shift(mps.value(), lambda1_);
    delta2_ = delta_shift(mms.value(), lambda2_);
    m1_ = mps.value() + delta1_;
    m2_ = mms.value() + delta2_;
  }

  HalfInt s() const { return s_; }
  HalfInt m() const { return m_; }
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  const Constants& constants() const { return k_; }

  HalfInt m_plus() const { return m_plus_; }
  HalfInt m_minus() const { return m_minus_; }
  double m1() const { return m1_; }
  double m2() const { return m2_; }
  double delta1() const { return delta1_; }
  double delta2() const { return delta2_; }
  double delta_bar() const { return 0.5 * (delta1_ + delta2_); }

  // monopole charge g = hbar c s / e in units with c = 1
  double magnetic_charge() const { return k_.hbar * s_.value() / k_.charge; }

  // Lowest admissible principal quantum number m_plus + 1.
  HalfInt n_min() const { return m_plus_ + 1; }

private:
  // delta = sqrt(p^2 + q) - |p| computed through the lambda-ratio form,
  // exact at lambda = 0 and stable when q << p^2.
  double delta_shift(double p_abs, double lambda) const {
    const double q = 4.0 * k_.mass * lambda / (k_.hbar * k_.hbar);
    if (q == 0.0)
      return 0.0;
    return q / (std::sqrt(p_abs * p_abs + q) + p_abs);
  }

  HalfInt s_, m_;
  double lambda1_, lambda2_;
  Constants k_;
  HalfInt m_plus_, m_minus_;
  double m1_ = 0, m2_ = 0, delta1_ = 0, delta2_ = 0;
};

inline Channel make_channel(HalfInt s, HalfInt m, double lambda1, double lambda2,
                            Constants constants = {}) {
  return Channel(s, m, lambda1, lambda2, constants);
}

namespace detail {

inline void require_level(HalfInt n, const Channel& ch) {
  const HalfInt base = ch.n_min();
  if (n < base || ((n.twice() - base.twice()) % 2) != 0)
    throw std::domain_error("n must lie in {m_plus+1, m_plus+2, ...} (got n = " +
                            n.str() + ", m_plus = " + ch.m_plus().str() + ")");
}

} // namespace detail

// Bound-state energy E_n = -mu e^4 / (2 hbar^2 (n + (delta1+delta2)/2)^2).
// With lambda > 0 the m-degeneracy is broken through the deltas.
inline double energy_mic(HalfInt n, const Channel& ch) {
  detail::require_level(n, ch);
  const auto& k = ch.constants();
  const double nu = n.value() + ch.delta_bar();
  const double e2 = k.charge * k.charge;
  return -k.mass * e2 * e2 / (2.0 * k.hbar * k.hbar * nu * nu);
}

// epsilon = sqrt(-2 mu E)/hbar = 1/(a (n + (delta1+delta2)/2)).
inline double epsilon_scale(HalfInt n, const Channel& ch) {
  detail::require_level(n, ch);
  const double nu = n.value() + ch.delta_bar();
  return 1.0 / (ch.constants().bohr_radius() * nu);
}

// Spherical-basis labels. The principal quantum number lives on the ladder
// n = m_plus + 1, m_plus + 2, ... and is a half-integer whenever m and s are.
struct SphericalQN {
  HalfInt n;
  HalfInt j;
  Channel channel;

  SphericalQN(HalfInt n_, HalfInt j_, Channel ch)
      : n(n_), j(j_), channel(std::move(ch)) {
    const HalfInt mp = channel.m_plus();
    if (j < mp || ((j.twice() - mp.twice()) % 2) != 0)
      throw std::domain_error("j must lie in {m_plus, m_plus+1, ..., n-1} (got j = " +
                              j.str() + ", m_plus = " + mp.str() + ")");
    if (n < j + 1 || ((n.twice() - j.twice()) % 2) != 0)
      throw std::domain_error("n must satisfy n - j - 1 in {0,1,2,...} (got n = " +
                              n.str() + ", j = " + j.str() + ")");
  }

  int radial_nodes() const { return static_cast<int>((n - j - 1).as_integer()); }
};

struct ParabolicQN {
  int n1 = 0;
  int n2 = 0;
  Channel channel;

  ParabolicQN(int n1_, int n2_, Channel ch)
      : n1(n1_), n2(n2_), channel(std::move(ch)) {
    if (n1 < 0 || n2 < 0)
      throw std::domain_error("parabolic quantum numbers require n1, n2 >= 0");
  }

  // n = n1 + n2 + (|m-s| + |m+s|)/2 + 1
  HalfInt n() const { return channel.m_plus() + (n1 + n2 + 1); }
};

} // namespace mick
