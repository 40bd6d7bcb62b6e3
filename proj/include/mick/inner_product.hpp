#pragma once

#include <cmath>
#include <complex>

#include "mick/coords.hpp"
#include "mick/quadrature.hpp"

namespace mick::quad {

namespace detail {

struct KahanC {
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> comp{0.0, 0.0};
  void add(const std::complex<double>& v) {
    const std::complex<double> y = v - comp;
    const std::complex<double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Gauss-Jacobi rule with the (1-x)^a (1+x)^b weight divided back out, for
// integrating raw integrands that carry those endpoint factors themselves.
inline Grid1D jacobi_deweighted(int n, double a, double b) {
  Grid1D g = gauss_jacobi(n, a, b);
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    g.weights[i] /= std::pow(1.0 - g.nodes[i], a) * std::pow(1.0 + g.nodes[i], b);
  return g;
}

} // namespace detail

// <f|g> = int conj(f) g r^2 sin(theta) dr dtheta dphi.
// The radial rule is exact for r^{r_alpha} e^{-r/r_scale} x polynomial;
// th_alpha/th_beta state the known (1-x)^a (1+x)^b behaviour at x = cos(theta).
struct SphericalProductGrid {
  int nr = 96, ntheta = 64, nphi = 32;
  double r_scale = 1.0;
  double r_alpha = 0.0;
  double th_alpha = 0.0, th_beta = 0.0;

  SphericalProductGrid doubled() const {
    SphericalProductGrid d = *this;
    d.nr *= 2;
    d.ntheta *= 2;
    d.nphi *= 2;
    return d;
  }
};

template <class F, class G>
std::complex<double> inner_product(F&& f, G&& g, const SphericalProductGrid& spec) {
  const Grid1D rg = radial_grid(spec.r_scale, spec.nr, spec.r_alpha);
  const Grid1D tg = detail::jacobi_deweighted(spec.ntheta, spec.th_alpha, spec.th_beta);
  const Grid1D pg = periodic_trapezoid(spec.nphi, 2.0 * M_PI);

  detail::KahanC acc;
  for (int ir = 0; ir < spec.nr; ++ir) {
    const double r = rg.nodes[ir];
    const double wr = rg.weights[ir] * r * r;
    for (int it = 0; it < spec.ntheta; ++it) {
      const double theta = std::acos(tg.nodes[it]);
      const double wt = tg.weights[it]; // sin(theta) dtheta = -d cos(theta)
      for (int ip = 0; ip < spec.nphi; ++ip) {
        const Spherical3 p{r, theta, pg.nodes[ip]};
        acc.add(wr * wt * pg.weights[ip] * std::conj(f(p)) * g(p));
      }
    }
  }
  return acc.sum;
}

// <f|g> = int conj(f) g (xi+eta)/4 dxi deta dphi.
struct ParabolicProductGrid {
  int nxi = 96, neta = 96, nphi = 32;
  double xi_scale = 2.0, eta_scale = 2.0;
  double xi_alpha = 0.0, eta_alpha = 0.0;

  ParabolicProductGrid doubled() const {
    ParabolicProductGrid d = *this;
    d.nxi *= 2;
    d.neta *= 2;
    d.nphi *= 2;
    return d;
  }
};

template <class F, class G>
std::complex<double> inner_product(F&& f, G&& g, const ParabolicProductGrid& spec) {
  const Grid1D xg = radial_grid(spec.xi_scale, spec.nxi, spec.xi_alpha);
  const Grid1D eg = radial_grid(spec.eta_scale, spec.neta, spec.eta_alpha);
  const Grid1D pg = periodic_trapezoid(spec.nphi, 2.0 * M_PI);

  detail::KahanC acc;
  for (int ix = 0; ix < spec.nxi; ++ix) {
    for (int ie = 0; ie < spec.neta; ++ie) {
      const double w2 =
          xg.weights[ix] * eg.weights[ie] * 0.25 * (xg.nodes[ix] + eg.nodes[ie]);
      for (int ip = 0; ip < spec.nphi; ++ip) {
        const Parabolic3 p{xg.nodes[ix], eg.nodes[ie], pg.nodes[ip]};
        acc.add(w2 * pg.weights[ip] * std::conj(f(p)) * g(p));
      }
    }
  }
  return acc.sum;
}

// <f|g> = int conj(f) g d^4u over the hyperspherical chart,
// d^4u = (u^3/8) sin(beta) du dalpha dbeta dgamma, gamma over [0, 4pi).
// The u integral runs in t = u^2 on a Laguerre rule that is exact for
// t^{t_alpha} e^{-t/t_scale} x polynomial.
struct Hyper4ProductGrid {
  int nu = 96, nbeta = 64, nalpha = 32, ngamma = 32;
  double t_scale = 1.0;
  double t_alpha = 1.0;
  double b_alpha = 0.0, b_beta = 0.0;

  Hyper4ProductGrid doubled() const {
    Hyper4ProductGrid d = *this;
    d.nu *= 2;
    d.nbeta *= 2;
    d.nalpha *= 2;
    d.ngamma *= 2;
    return d;
  }
};

template <class F, class G>
std::complex<double> inner_product(F&& f, G&& g, const Hyper4ProductGrid& spec) {
  const Grid1D tg = radial_grid(spec.t_scale, spec.nu, spec.t_alpha);
  const Grid1D bg = detail::jacobi_deweighted(spec.nbeta, spec.b_alpha, spec.b_beta);
  const Grid1D ag = periodic_trapezoid(spec.nalpha, 2.0 * M_PI);
  const Grid1D gg = periodic_trapezoid(spec.ngamma, 4.0 * M_PI);

  detail::KahanC acc;
  for (int iu = 0; iu < spec.nu; ++iu) {
    const double t = tg.nodes[iu];
    const double u = std::sqrt(t);
    const double wu = 0.5 * tg.weights[iu] * t / 8.0; // u^3 du -> (t/2) dt, /8 measure
    for (int ib = 0; ib < spec.nbeta; ++ib) {
      const double beta = std::acos(bg.nodes[ib]);
      for (int ia = 0; ia < spec.nalpha; ++ia) {
        for (int ig = 0; ig < spec.ngamma; ++ig) {
          const Hyperspherical4 h{u, ag.nodes[ia], beta, gg.nodes[ig]};
          acc.add(wu * bg.weights[ib] * ag.weights[ia] * gg.weights[ig] *
                  std::conj(f(h)) * g(h));
        }
      }
    }
  }
  return acc.sum;
}

// <f|g> = int conj(f) g rho1 rho2 drho1 drho2 dphi1 dphi2.
// Radial directions run in xi = 2 rho1^2 and eta = 2 rho2^2.
struct DoublePolar4ProductGrid {
  int nrho1 = 96, nrho2 = 96, nphi1 = 32, nphi2 = 32;
  double xi_scale = 2.0, eta_scale = 2.0;
  double xi_alpha = 0.0, eta_alpha = 0.0;

  DoublePolar4ProductGrid doubled() const {
    DoublePolar4ProductGrid d = *this;
    d.nrho1 *= 2;
    d.nrho2 *= 2;
    d.nphi1 *= 2;
    d.nphi2 *= 2;
    return d;
  }
};

template <class F, class G>
std::complex<double> inner_product(F&& f, G&& g,
                                   const DoublePolar4ProductGrid& spec) {
  const Grid1D xg = radial_grid(spec.xi_scale, spec.nrho1, spec.xi_alpha);
  const Grid1D eg = radial_grid(spec.eta_scale, spec.nrho2, spec.eta_alpha);
  const Grid1D p1 = periodic_trapezoid(spec.nphi1, 2.0 * M_PI);
  const Grid1D p2 = periodic_trapezoid(spec.nphi2, 2.0 * M_PI);

  detail::KahanC acc;
  for (int ix = 0; ix < spec.nrho1; ++ix) {
    const double rho1 = std::sqrt(0.5 * xg.nodes[ix]);
    for (int ie = 0; ie < spec.nrho2; ++ie) {
      const double rho2 = std::sqrt(0.5 * eg.nodes[ie]);
      const double wr = 0.0625 * xg.weights[ix] * eg.weights[ie]; // (1/4)^2
      for (int i1 = 0; i1 < spec.nphi1; ++i1) {
        for (int i2 = 0; i2 < spec.nphi2; ++i2) {
          const DoublePolar4 d{rho1, rho2, p1.nodes[i1], p2.nodes[i2]};
          acc.add(wr * p1.weights[i1] * p2.weights[i2] * std::conj(f(d)) * g(d));
        }
      }
    }
  }
  return acc.sum;
}

} // namespace mick::quad
