#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mick/specfun.hpp"

namespace mick::quad {

struct Grid1D {
  enum class Kind { legendre, jacobi, radial_laguerre, periodic_trapezoid };
  std::vector<double> nodes;
  std::vector<double> weights;
  Kind kind = Kind::legendre;

  template <class F> double integrate(F&& f) const {
    double acc = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double y = weights[i] * f(nodes[i]) - comp;
      const double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    return acc;
  }
};

namespace detail {

// Monic three-term recurrence p_{k+1} = (x - a_k) p_k - b_k p_{k-1} for the
// classical weights. b_0 stores the zeroth moment of the weight.
struct Recurrence {
  std::vector<double> a, b;
};

inline Recurrence legendre_recurrence(int n) {
  Recurrence r;
  r.a.assign(n, 0.0);
  r.b.assign(n, 0.0);
  r.b[0] = 2.0;
  for (int k = 1; k < n; ++k)
    r.b[k] = (double)k * k / (4.0 * k * k - 1.0);
  return r;
}

inline Recurrence jacobi_recurrence(int n, double al, double be) {
  Recurrence r;
  r.a.assign(n, 0.0);
  r.b.assign(n, 0.0);
  const double ab = al + be;
  r.a[0] = (be - al) / (ab + 2.0);
  r.b[0] = std::exp((ab + 1.0) * std::log(2.0) + specfun::ln_gamma(al + 1.0) +
                    specfun::ln_gamma(be + 1.0) - specfun::ln_gamma(ab + 2.0));
  for (int k = 1; k < n; ++k) {
    const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    r.a[k] = (be * be - al * al) / den;
    r.b[k] = 4.0 * k * (k + al) * (k + be) * (k + ab) /
             ((2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) *
              (2.0 * k + ab - 1.0));
  }
  return r;
}

inline Recurrence laguerre_recurrence(int n, double al) {
  Recurrence r;
  r.a.assign(n, 0.0);
  r.b.assign(n, 0.0);
  r.b[0] = std::exp(specfun::ln_gamma(al + 1.0));
  for (int k = 0; k < n; ++k)
    r.a[k] = 2.0 * k + al + 1.0;
  for (int k = 1; k < n; ++k)
    r.b[k] = (double)k * (k + al);
  return r;
}

// Number of Gauss nodes (= eigenvalues of the Jacobi matrix) below x,
// via the standard Sturm/LDL^T pivot count.
inline int sturm_count_below(const Recurrence& rec, int n, double x) {
  int count = 0;
  double q = 1.0;
  for (int k = 0; k < n; ++k) {
    q = (rec.a[k] - x) - (k > 0 ? rec.b[k] / q : 0.0);
    if (q == 0.0)
      q = -1e-300; // exact hit counts as below
    if (q < 0.0)
      ++count;
  }
  return count;
}

// Evaluate monic p_n, p_n' and p_{n-1} with running rescale; returns log of
// the common scale so huge/tiny families (Laguerre at n ~ 200) stay finite.
struct ScaledPoly {
  double pn, dpn, pnm1;
  double log_scale;
};

inline ScaledPoly eval_monic(const Recurrence& rec, int n, double x) {
  double pkm1 = 0.0, pk = 1.0, dkm1 = 0.0, dk = 0.0;
  double log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double pkp1 = (x - rec.a[k]) * pk - (k > 0 ? rec.b[k] : 0.0) * pkm1;
    const double dkp1 = pk + (x - rec.a[k]) * dk - (k > 0 ? rec.b[k] : 0.0) * dkm1;
    pkm1 = pk;
    dkm1 = dk;
    pk = pkp1;
    dk = dkp1;
    const double mag = std::max({std::abs(pk), std::abs(pkm1), std::abs(dk)});
    if (mag > 1e150) {
      pk /= 1e150;
      pkm1 /= 1e150;
      dk /= 1e150;
      dkm1 /= 1e150;
      log_scale += std::log(1e150);
    } else if (mag > 0.0 && mag < 1e-150) {
      pk *= 1e150;
      pkm1 *= 1e150;
      dk *= 1e150;
      dkm1 *= 1e150;
      log_scale -= std::log(1e150);
    }
  }
  return {pk, dk, pkm1, log_scale};
}

// Gauss nodes and log-weights for an arbitrary recurrence: Sturm bisection
// brackets every root of p_n, Newton polishes, and the weights come from
//   w_i = <p_{n-1}, p_{n-1}> / (p_{n-1}(x_i) p_n'(x_i)).
inline void gauss_rule(const Recurrence& rec, int n, std::vector<double>& x,
                       std::vector<double>& logw) {
  // Gershgorin interval for the symmetric Jacobi matrix
  double lo = rec.a[0], hi = rec.a[0];
  for (int k = 0; k < n; ++k) {
    const double e1 = k > 0 ? std::sqrt(rec.b[k]) : 0.0;
    const double e2 = k + 1 < n ? std::sqrt(rec.b[k + 1]) : 0.0;
    lo = std::min(lo, rec.a[k] - e1 - e2);
    hi = std::max(hi, rec.a[k] + e1 + e2);
  }

  x.resize(n);
  for (int i = 0; i < n; ++i) {
    double a = lo, b = hi;
    for (int iter = 0;
         iter < 110 && (b - a) > 2e-16 * (std::abs(a) + std::abs(b) + 1e-30);
         ++iter) {
      const double mid = 0.5 * (a + b);
      if (sturm_count_below(rec, n, mid) <= i)
        a = mid;
      else
        b = mid;
    }
    x[i] = 0.5 * (a + b);
  }

  // log <p_{n-1}, p_{n-1}> = log mu0 + sum log b_k
  double log_norm = std::log(rec.b[0]);
  for (int k = 1; k < n; ++k)
    log_norm += std::log(rec.b[k]);

  logw.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto pe = eval_monic(rec, n, x[i]);
    logw[i] = log_norm - (std::log(std::abs(pe.pnm1)) + pe.log_scale) -
              (std::log(std::abs(pe.dpn)) + pe.log_scale);
  }
}

} // namespace detail

// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree <= 2n-1.
inline Grid1D gauss_legendre(int n) {
  if (n < 1 || n > 512)
    throw std::domain_error("gauss_legendre: requires 1 <= n <= 512");
  const auto rec = detail::legendre_recurrence(n);
  std::vector<double> x, logw;
  detail::gauss_rule(rec, n, x, logw);
  Grid1D g;
  g.kind = Grid1D::Kind::legendre;
  g.nodes = std::move(x);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i)
    g.weights[i] = std::exp(logw[i]);
  return g;
}

// Gauss-Jacobi rule on [-1, 1] with weight (1-x)^alpha (1+x)^beta folded
// into the returned weights (integrates plain f against that weight).
inline Grid1D gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1 || n > 512)
    throw std::domain_error("gauss_jacobi: requires 1 <= n <= 512");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::domain_error("gauss_jacobi: requires alpha, beta > -1");
  const auto rec = detail::jacobi_recurrence(n, alpha, beta);
  std::vector<double> x, logw;
  detail::gauss_rule(rec, n, x, logw);
  Grid1D g;
  g.kind = Grid1D::Kind::jacobi;
  g.nodes = std::move(x);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i)
    g.weights[i] = std::exp(logw[i]);
  return g;
}

// Radial rule on (0, inf) for integrands dominated by r^alpha e^{-r/scale}:
// scaled Gauss-Laguerre nodes with the exponential folded back out, so
// sum_i w_i f(r_i) ~ int_0^inf f(r) dr, exact for f = r^alpha e^{-r/scale} P(r).
inline Grid1D radial_grid(double scale, int n, double alpha = 0.0) {
  if (!(scale > 0.0))
    throw std::domain_error("radial_grid: requires scale > 0");
  if (n < 1 || n > 512)
    throw std::domain_error("radial_grid: requires 1 <= n <= 512");
  const auto rec = detail::laguerre_recurrence(n, alpha);
  std::vector<double> x, logw;
  detail::gauss_rule(rec, n, x, logw);
  Grid1D g;
  g.kind = Grid1D::Kind::radial_laguerre;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = scale * x[i];
    g.weights[i] = scale * std::exp(logw[i] + x[i] - alpha * std::log(x[i]));
  }
  return g;
}

// Uniform trapezoid rule over one period; spectrally accurate for smooth
// periodic integrands.
inline Grid1D periodic_trapezoid(int n, double period) {
  if (n < 1)
    throw std::domain_error("periodic_trapezoid: requires n >= 1");
  Grid1D g;
  g.kind = Grid1D::Kind::periodic_trapezoid;
  const double h = period / n;
  g.nodes.resize(n);
  g.weights.assign(n, h);
  for (int i = 0; i < n; ++i)
    g.nodes[i] = i * h;
  return g;
}

// Affine image of a [-1,1] rule on [a, b].
inline Grid1D mapped(const Grid1D& base, double a, double b) {
  Grid1D g = base;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    g.nodes[i] = mid + half * base.nodes[i];
    g.weights[i] = base.weights[i] * half;
  }
  return g;
}

} // namespace mick::quad
