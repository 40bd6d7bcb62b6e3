#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>

#include "mick/channels.hpp"
#include "mick/coords.hpp"
#include "mick/fd.hpp"
#include "mick/specfun.hpp"

namespace mick {

using Amplitude = std::complex<double>;

// One-dimensional parabolic factor
//   Phi_{k,mi}(x) = N e^{-eps x/2} (eps x)^{mi/2} F(-k; mi+1; eps x),
//   N = sqrt(Gamma(k+mi+1)/k!) / Gamma(mi+1).
// Returned as a closure over (k, mi, eps).
inline std::function<double(double)> phi_parabolic(int k, double mi, double eps) {
  if (k < 0)
    throw std::domain_error("phi_parabolic: requires k >= 0");
  if (mi < 0.0)
    throw std::domain_error("phi_parabolic: requires mi >= 0");
  if (!(eps > 0.0))
    throw std::domain_error("phi_parabolic: requires eps > 0");
  const double log_norm =
      0.5 * (specfun::ln_gamma(k + mi + 1.0) - specfun::ln_gamma(k + 1.0)) -
      specfun::ln_gamma(mi + 1.0);
  return [k, mi, eps, log_norm](double x) {
    if (!(x > 0.0))
      throw std::domain_error("phi_parabolic: requires x > 0");
    const double t = eps * x;
    return std::exp(log_norm - 0.5 * t + 0.5 * mi * std::log(t)) *
           specfun::kummer_1f1(-static_cast<double>(k), mi + 1.0, t);
  };
}

// Spherical bound state psi = R_nj(r) Z_jm(theta,phi). The normalisation
// constants are assembled once, in log space, through ln_gamma; the radial
// prefactor (2 eps r)^{j+dbar} e^{-eps r} is combined in the exponent to
// survive large n and r.
class SphericalState {
public:
  explicit SphericalState(const SphericalQN& qn)
      : qn_(qn), eps_(epsilon_scale(qn.n, qn.channel)) {
    const Channel& ch = qn.channel;
    const double j = qn.j.value();
    const double dsum = ch.delta1() + ch.delta2();
    jd_ = j + ch.delta_bar();
    nr_ = qn.radial_nodes();
    fc_ = 2.0 * j + dsum + 2.0;

    // C_nj = 2 eps^2 / Gamma(2j+d1+d2+2) * sqrt(Gamma(n+j+d1+d2+1)/(n-j-1)!)
    log_cnj_ = std::log(2.0) + 2.0 * std::log(eps_) - specfun::ln_gamma(fc_) +
               0.5 * (specfun::ln_gamma(qn.n.value() + j + dsum + 1.0) -
                      specfun::ln_gamma(nr_ + 1.0));

    // N_jm per the angular normalisation, factorials as Gamma(.+1). The
    // denominator arguments are j - m_- + delta2 and j + m_- + delta1:
    // these equal (j - m_+) + m_2 and (j - m_+) + m_1, which the Jacobi
    // orthogonality norm of P^{(m2,m1)}_{j-m_+} requires.
    const double mp = ch.m_plus().value();
    const double mm = ch.m_minus().value();
    pj_deg_ = static_cast<int>((qn_.j - ch.m_plus()).as_integer());
    log_njm_ = 0.5 * (std::log(2.0 * j + dsum + 1.0) +
                      specfun::ln_gamma(j - mp + 1.0) +
                      specfun::ln_gamma(j + mp + dsum + 1.0) -
                      std::log(4.0 * M_PI) -
                      specfun::ln_gamma(j - mm + ch.delta2() + 1.0) -
                      specfun::ln_gamma(j + mm + ch.delta1() + 1.0));
    m1_ = ch.m1();
    m2_ = ch.m2();
    mps_ = (ch.m() + ch.s()).value();
  }

  const SphericalQN& qn() const { return qn_; }
  double epsilon() const { return eps_; }

  double radial(double r) const {
    if (!(r > 0.0))
      throw std::domain_error("R_nj: requires r > 0");
    const double t = 2.0 * eps_ * r;
    return std::exp(log_cnj_ + jd_ * std::log(t) - eps_ * r) *
           specfun::kummer_1f1(-static_cast<double>(nr_), fc_, t);
  }

  // theta profile of Z (everything except the azimuthal phase)
  double angular_theta(double theta) const {
    if (!(theta > 0.0) || !(theta < M_PI))
      throw std::domain_error("Z_jm: requires theta in (0, pi)");
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return std::exp(log_njm_) * std::pow(c, m1_) * std::pow(s, m2_) *
           specfun::jacobi_p(pj_deg_, m2_, m1_, std::cos(theta));
  }

  Amplitude angular(double theta, double phi) const {
    return angular_theta(theta) *
           std::exp(Amplitude(0.0, mps_ * phi));
  }

  Amplitude operator()(const Spherical3& p) const {
    return radial(p.r) * angular(p.theta, p.phi);
  }

private:
  SphericalQN qn_;
  double eps_;
  double jd_, fc_, log_cnj_, log_njm_;
  int nr_, pj_deg_;
  double m1_, m2_, mps_;
};

// Parabolic bound state
//   psi = sqrt(2) eps^2 Phi_{n1 m1}(xi) Phi_{n2 m2}(eta) e^{i(m+s)phi}/sqrt(2pi),
// normalised under the measure (xi+eta)/4 dxi deta dphi.
class ParabolicState {
public:
  explicit ParabolicState(const ParabolicQN& qn)
      : qn_(qn), eps_(epsilon_scale(qn.n(), qn.channel)),
        f1_{qn.n1, qn.channel.m1(), eps_}, f2_{qn.n2, qn.channel.m2(), eps_},
        mps_((qn.channel.m() + qn.channel.s()).value()) {}

  const ParabolicQN& qn() const { return qn_; }
  double epsilon() const { return eps_; }

  double xi_factor(double xi) const { return f1_(xi); }
  double eta_factor(double eta) const { return f2_(eta); }

  Amplitude operator()(const Parabolic3& p) const {
    const double radial = std::sqrt(2.0) * eps_ * eps_ * f1_(p.xi) * f2_(p.eta);
    return radial / std::sqrt(2.0 * M_PI) *
           std::exp(Amplitude(0.0, mps_ * p.phi));
  }

  Amplitude eval_spherical(const Spherical3& p) const {
    return (*this)(spherical_to_parabolic(p));
  }

private:
  struct Factor {
    Factor(int k_, double mi_, double eps_)
        : k(k_), mi(mi_), eps(eps_),
          log_norm(0.5 * (specfun::ln_gamma(k + mi + 1.0) -
                          specfun::ln_gamma(k + 1.0)) -
                   specfun::ln_gamma(mi + 1.0)) {}
    double operator()(double x) const {
      if (!(x > 0.0))
        throw std::domain_error("Phi factor: requires x > 0");
      const double t = eps * x;
      return std::exp(log_norm - 0.5 * t + 0.5 * mi * std::log(t)) *
             specfun::kummer_1f1(-static_cast<double>(k), mi + 1.0, t);
    }
    int k;
    double mi, eps, log_norm;
  };

  ParabolicQN qn_;
  double eps_;
  Factor f1_, f2_;
  double mps_;
};

inline Amplitude psi_spherical(const SphericalQN& qn, const Spherical3& p) {
  return SphericalState(qn)(p);
}

inline Amplitude psi_parabolic(const ParabolicQN& qn, const Parabolic3& p) {
  return ParabolicState(qn)(p);
}

inline Amplitude z_angular(const SphericalQN& qn, double theta, double phi) {
  return SphericalState(qn).angular(theta, phi);
}

inline std::function<double(double)> r_radial(const SphericalQN& qn) {
  auto state = std::make_shared<SphericalState>(qn);
  return [state](double r) { return state->radial(r); };
}

// Angular part of the Hamiltonian in its spherical form, applied by finite
// differences to a smooth f(theta, phi):
//   A f = -[(1/sin th) d_th(sin th d_th) + (1/sin^2 th) d^2_phi] f
//         + 2 i s/(1-cos th) d_phi f
//         + [2 s^2/(1-cos th) + (2 mu/hbar^2)(lambda1/(1+cos th)
//                                            + lambda2/(1-cos th))] f.
// Eigenvalue on Z_jm: (j + dbar)(j + dbar + 1).
template <class F>
Amplitude apply_angular_operator(F&& f, const Channel& ch, double theta,
                                 double phi, double h = 1e-3) {
  if (theta < 10.0 * h || theta > M_PI - 10.0 * h)
    throw std::domain_error("apply_angular_operator: theta too close to a pole");

  auto ftheta = [&](double t) { return f(t, phi); };
  auto fphi = [&](double p) { return f(theta, p); };

  const Amplitude ftt = fd::d2_rich(ftheta, theta, h);
  const Amplitude ft = fd::d1_rich(ftheta, theta, h);
  const Amplitude fpp = fd::d2_rich(fphi, phi, h);
  const Amplitude fp = fd::d1_rich(fphi, phi, h);
  const Amplitude f0 = f(theta, phi);

  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const auto& k = ch.constants();
  const double s = ch.s().value();
  const double two_mu_h2 = 2.0 * k.mass / (k.hbar * k.hbar);

  Amplitude out = -(ftt + (ct / st) * ft + fpp / (st * st));
  out += Amplitude(0.0, 2.0 * s / (1.0 - ct)) * fp;
  out += (2.0 * s * s / (1.0 - ct) +
          two_mu_h2 * (ch.lambda1() / (1.0 + ct) + ch.lambda2() / (1.0 - ct))) *
         f0;
  return out;
}

// J_z = -(s + i d_phi); eigenvalue m on both bases.
template <class F>
Amplitude apply_jz(F&& f, const Channel& ch, double theta, double phi,
                   double h = 1e-3) {
  auto fphi = [&](double p) { return f(theta, p); };
  const Amplitude fp = fd::d1_rich(fphi, phi, h);
  return -(ch.s().value() * f(theta, phi) + Amplitude(0.0, 1.0) * fp);
}

} // namespace mick
