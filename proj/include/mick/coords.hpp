#pragma once

#include <cmath>
#include <stdexcept>

namespace mick {

struct Cartesian3 {
  double x = 0, y = 0, z = 0;
};

struct Spherical3 {
  double r = 0, theta = 0, phi = 0; // r > 0, theta in (0,pi), phi in [0,2pi)
};

struct Parabolic3 {
  double xi = 0, eta = 0, phi = 0; // xi, eta > 0
};

struct Cartesian4 {
  double u0 = 0, u1 = 0, u2 = 0, u3 = 0;
  double norm2() const { return u0 * u0 + u1 * u1 + u2 * u2 + u3 * u3; }
  double norm() const { return std::sqrt(norm2()); }

  double component(int i) const {
    switch (i) {
    case 0: return u0;
    case 1: return u1;
    case 2: return u2;
    default: return u3;
    }
  }
  void set_component(int i, double v) {
    switch (i) {
    case 0: u0 = v; break;
    case 1: u1 = v; break;
    case 2: u2 = v; break;
    default: u3 = v; break;
    }
  }
};

struct Hyperspherical4 {
  double u = 0;     // radius, u^2 = r
  double alpha = 0; // in [0,2pi)
  double beta = 0;  // in (0,pi)
  double gamma = 0; // in [0,4pi)
};

struct DoublePolar4 {
  double rho1 = 0, rho2 = 0; // >= 0
  double phi1 = 0, phi2 = 0; // in [0,2pi)
};

inline Cartesian3 spherical_to_cart3(const Spherical3& p) {
  return {p.r * std::sin(p.theta) * std::cos(p.phi),
          p.r * std::sin(p.theta) * std::sin(p.phi), p.r * std::cos(p.theta)};
}

inline Spherical3 cart3_to_spherical(const Cartesian3& p) {
  const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  const double rho = std::sqrt(p.x * p.x + p.y * p.y);
  double phi = std::atan2(p.y, p.x);
  if (phi < 0.0)
    phi += 2.0 * M_PI;
  return {r, std::atan2(rho, p.z), phi};
}

// xi = r + z, eta = r - z, same azimuth.
inline Parabolic3 spherical_to_parabolic(const Spherical3& p) {
  return {p.r * (1.0 + std::cos(p.theta)), p.r * (1.0 - std::cos(p.theta)),
          p.phi};
}

inline Spherical3 parabolic_to_spherical(const Parabolic3& p) {
  const double r = 0.5 * (p.xi + p.eta);
  const double z = 0.5 * (p.xi - p.eta);
  const double rho = std::sqrt(p.xi * p.eta);
  return {r, std::atan2(rho, z), p.phi};
}

// Quadratic R^4 -> R^3 map with r = u^2, plus the extra angle gamma carried
// by the fibre. gamma is undefined whenever one of the two polar radii
// vanishes (the image point sits on the z axis).
struct KSResult {
  Cartesian3 p;
  double r = 0;
  double gamma = 0;
  bool gamma_defined = false;
};

inline KSResult ks_forward(const Cartesian4& u) {
  const double rho1 = std::sqrt(u.u0 * u.u0 + u.u1 * u.u1);
  const double rho2 = std::sqrt(u.u2 * u.u2 + u.u3 * u.u3);
  if (rho1 == 0.0 && rho2 == 0.0)
    throw std::domain_error("ks_forward: degenerate point u = 0");
  KSResult out;
  out.p = {2.0 * (u.u0 * u.u2 - u.u1 * u.u3), 2.0 * (u.u0 * u.u3 + u.u1 * u.u2),
           u.u0 * u.u0 + u.u1 * u.u1 - u.u2 * u.u2 - u.u3 * u.u3};
  out.r = u.norm2();
  if (rho1 > 0.0 && rho2 > 0.0) {
    out.gamma = std::atan2(u.u1, u.u0) - std::atan2(u.u3, u.u2);
    out.gamma_defined = true;
  }
  return out;
}

inline Cartesian4 hyperspherical_to_cart4(const Hyperspherical4& h) {
  const double c = h.u * std::cos(0.5 * h.beta);
  const double s = h.u * std::sin(0.5 * h.beta);
  const double p1 = 0.5 * (h.alpha + h.gamma);
  const double p2 = 0.5 * (h.alpha - h.gamma);
  return {c * std::cos(p1), c * std::sin(p1), s * std::cos(p2), s * std::sin(p2)};
}

inline Hyperspherical4 cart4_to_hyperspherical(const Cartesian4& u) {
  const double rho1 = std::sqrt(u.u0 * u.u0 + u.u1 * u.u1);
  const double rho2 = std::sqrt(u.u2 * u.u2 + u.u3 * u.u3);
  if (rho1 == 0.0 || rho2 == 0.0)
    throw std::domain_error("cart4_to_hyperspherical: beta pole, inverse undefined");
  Hyperspherical4 h;
  h.u = u.norm();
  h.beta = 2.0 * std::atan2(rho2, rho1);
  const double p1 = std::atan2(u.u1, u.u0);
  const double p2 = std::atan2(u.u3, u.u2);
  double alpha = p1 + p2;
  double gamma = p1 - p2;
  if (alpha < 0.0) {
    alpha += 2.0 * M_PI;
    gamma -= 2.0 * M_PI; // keep (alpha+gamma)/2 and (alpha-gamma)/2 intact
  }
  if (gamma < 0.0)
    gamma += 4.0 * M_PI;
  h.alpha = alpha;
  h.gamma = gamma;
  return h;
}

inline DoublePolar4 cart4_to_doublepolar(const Cartesian4& u) {
  DoublePolar4 d;
  d.rho1 = std::sqrt(u.u0 * u.u0 + u.u1 * u.u1);
  d.rho2 = std::sqrt(u.u2 * u.u2 + u.u3 * u.u3);
  d.phi1 = std::atan2(u.u1, u.u0);
  d.phi2 = std::atan2(u.u3, u.u2);
  if (d.phi1 < 0.0)
    d.phi1 += 2.0 * M_PI;
  if (d.phi2 < 0.0)
    d.phi2 += 2.0 * M_PI;
  return d;
}

inline Cartesian4 doublepolar_to_cart4(const DoublePolar4& d) {
  return {d.rho1 * std::cos(d.phi1), d.rho1 * std::sin(d.phi1),
          d.rho2 * std::cos(d.phi2), d.rho2 * std::sin(d.phi2)};
}

// Parabolic coordinates of the KS image of a double-polar point. The
// symmetric pair xi = 2 rho1^2, eta = 2 rho2^2 is forced by r = rho1^2+rho2^2
// and z = rho1^2 - rho2^2 together with xi = r+z, eta = r-z.
struct ParabolicRelations {
  double xi = 0, eta = 0;
  double phi = 0;   // phi1 + phi2 (mod 2pi)
  double gamma = 0; // phi1 - phi2
};

inline ParabolicRelations double_polar_relations(const DoublePolar4& d) {
  if (d.rho1 <= 0.0 || d.rho2 <= 0.0)
    throw std::domain_error("double_polar_relations: requires rho1, rho2 > 0");
  ParabolicRelations rel;
  rel.xi = 2.0 * d.rho1 * d.rho1;
  rel.eta = 2.0 * d.rho2 * d.rho2;
  rel.phi = std::fmod(d.phi1 + d.phi2, 2.0 * M_PI);
  if (rel.phi < 0.0)
    rel.phi += 2.0 * M_PI;
  rel.gamma = d.phi1 - d.phi2;
  return rel;
}

} // namespace mick
