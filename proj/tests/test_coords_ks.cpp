#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "mick/basis_mic.hpp"
#include "mick/coords.hpp"
#include "mick/fd.hpp"
#include "mick/ks_duality.hpp"
#include "mick/oscillator4d.hpp"
#include "mick/rng.hpp"

using namespace mick;

TEST_CASE("ks_forward anchors") {
  const auto a = ks_forward({1, 0, 0, 0});
  CHECK(a.p.x == 0.0);
  CHECK(a.p.y == 0.0);
  CHECK(a.p.z == 1.0);
  CHECK(a.r == 1.0);
  CHECK_FALSE(a.gamma_defined); // rho2 = 0

  const double q = 1.0 / std::sqrt(2.0);
  const auto b = ks_forward({q, 0, q, 0});
  CHECK(b.p.x == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(b.p.y == Catch::Approx(0.0).margin(1e-15));
  CHECK(b.p.z == Catch::Approx(0.0).margin(1e-15));
  CHECK(b.gamma_defined);
  CHECK(b.gamma == Catch::Approx(0.0).margin(1e-15));

  CHECK_THROWS_AS(ks_forward({0, 0, 0, 0}), std::domain_error);
}

TEST_CASE("ks identity and gamma forms on random points") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Cartesian4 u{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-2, 2)};
    const auto ks = ks_forward(u);
    CHECK(ks.r == u.norm2());
    const double r2 = ks.p.x * ks.p.x + ks.p.y * ks.p.y + ks.p.z * ks.p.z;
    CHECK(std::abs(r2 - ks.r * ks.r) <= 1e-13 * std::max(1.0, ks.r * ks.r));

    if (ks.gamma_defined) {
      // the logarithmic form, taken factor by factor in real arithmetic
      const double log_form =
          -0.5 * (std::atan2(-u.u1, u.u0) + std::atan2(u.u3, u.u2) -
                  std::atan2(u.u1, u.u0) - std::atan2(-u.u3, u.u2));
      CHECK(std::abs(std::remainder(ks.gamma - log_form, 4.0 * M_PI)) <= 1e-12);
    }
  }
}

TEST_CASE("hyperspherical chart") {
  const auto u = hyperspherical_to_cart4({1.0, 0.0, 0.5 * M_PI, 0.0});
  CHECK(u.u0 == Catch::Approx(std::cos(0.25 * M_PI)).epsilon(1e-15));
  CHECK(u.u1 == Catch::Approx(0.0).margin(1e-15));
  CHECK(u.u2 == Catch::Approx(std::sin(0.25 * M_PI)).epsilon(1e-15));
  CHECK(u.u3 == Catch::Approx(0.0).margin(1e-15));

  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const Cartesian4 v{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-2, 2)};
    const auto h = cart4_to_hyperspherical(v);
    CHECK(h.alpha >= 0.0);
    CHECK(h.alpha < 2.0 * M_PI);
    CHECK(h.gamma >= 0.0);
    CHECK(h.gamma < 4.0 * M_PI);
    const auto back = hyperspherical_to_cart4(h);
    CHECK(std::abs(back.u0 - v.u0) <= 1e-13);
    CHECK(std::abs(back.u1 - v.u1) <= 1e-13);
    CHECK(std::abs(back.u2 - v.u2) <= 1e-13);
    CHECK(std::abs(back.u3 - v.u3) <= 1e-13);

    // composed with the forward map: r = u^2, theta = beta, phi = alpha
    const auto ks = ks_forward(v);
    const auto sp = cart3_to_spherical(ks.p);
    CHECK(std::abs(sp.r - h.u * h.u) <= 1e-13 * std::max(1.0, sp.r));
    CHECK(std::abs(sp.theta - h.beta) <= 1e-12);
    CHECK(std::abs(std::remainder(sp.phi - h.alpha, 2.0 * M_PI)) <= 1e-12);
  }

  CHECK_THROWS_AS(cart4_to_hyperspherical({1, 0, 0, 0}), std::domain_error);
}

TEST_CASE("double polar relations") {
  const auto rel = double_polar_relations({1.0, 1.0, 0.0, 0.0});
  CHECK(rel.xi == 2.0);
  CHECK(rel.eta == 2.0);
  CHECK(rel.phi == 0.0);
  CHECK(rel.gamma == 0.0);
  // z = (xi - eta)/2 = 0, r = (xi + eta)/2 = 2
  const auto ks = ks_forward(doublepolar_to_cart4({1.0, 1.0, 0.0, 0.0}));
  CHECK(ks.p.z == Catch::Approx(0.0).margin(1e-15));
  CHECK(ks.r == Catch::Approx(2.0).epsilon(1e-15));

  // +z axis limit: eta -> 0
  const auto axis = double_polar_relations({1.0, 1e-8, 0.3, 0.9});
  CHECK(axis.eta == Catch::Approx(2e-16).epsilon(1e-12));

  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const DoublePolar4 d{rng.uniform(0.02, 2.0), rng.uniform(0.02, 2.0),
                         rng.uniform(0.0, 2.0 * M_PI), rng.uniform(0.0, 2.0 * M_PI)};
    const auto r = double_polar_relations(d);
    const auto k = ks_forward(doublepolar_to_cart4(d));
    CHECK(std::abs(0.5 * (r.xi - r.eta) - k.p.z) <= 1e-12);
    CHECK(std::abs(0.5 * (r.xi + r.eta) - k.r) <= 1e-12);
  }

  CHECK_THROWS_AS(double_polar_relations({0.0, 1.0, 0, 0}), std::domain_error);
}

TEST_CASE("lift: phase structure and degenerate axes") {
  const Channel ch(HalfInt::parse("1/2"), HalfInt::parse("1/2"), 0.0, 0.0);
  SphericalState st(SphericalQN(HalfInt::parse("3/2"), HalfInt::parse("1/2"), ch));
  auto lifted = lift_wavefunction(st, ch.s());

  // s = 0 lift is gamma-independent
  const Channel c0(HalfInt::whole(0), HalfInt::whole(0), 0.0, 0.0);
  SphericalState g0(SphericalQN(HalfInt::whole(1), HalfInt::whole(0), c0));
  auto l0 = lift_wavefunction(g0, c0.s());
  const Spherical3 p{1.2, 1.0, 0.5};
  CHECK(std::abs(l0(p, 0.4) - l0(p, 3.3)) < 1e-15);
  CHECK(std::abs(std::abs(l0(p, 0.4)) -
                 std::abs(g0(p)) / std::sqrt(4.0 * M_PI)) < 1e-15);

  // |lifted| = |psi|/sqrt(4pi) for any s
  CHECK(std::abs(std::abs(lifted(p, 2.2)) -
                 std::abs(st(p)) / std::sqrt(4.0 * M_PI)) < 1e-15);

  // half-integer s on a degenerate axis: undefined phase
  CHECK_THROWS_AS(lifted(Cartesian4{1.0, 0.0, 0.0, 0.0}), std::domain_error);

  // single-valuedness: gamma and gamma + 4pi agree, gamma + 2pi flips sign
  const Amplitude a0 = lifted(p, 1.0);
  CHECK(std::abs(lifted(p, 1.0 + 4.0 * M_PI) - a0) < 1e-13);
  CHECK(std::abs(lifted(p, 1.0 + 2.0 * M_PI) + a0) < 1e-13);
}

TEST_CASE("4D Laplacian splits into radial part and L^2") {
  // On a lifted bound state, sum_mu d^2/du_mu^2 f must equal
  // [u^-3 d_u(u^3 d_u) - 4 u^-2 L^2] f, finite differences on both sides.
  const Channel ch(HalfInt::whole(0), HalfInt::whole(0), 0.0, 0.0);
  SphericalState st(SphericalQN(HalfInt::whole(2), HalfInt::whole(1), ch));
  auto lifted = lift_wavefunction(st, ch.s());

  Rng rng(9);
  for (int i = 0; i < 5; ++i) {
    Cartesian4 u{rng.uniform(0.4, 1.2), rng.uniform(0.4, 1.2),
                 rng.uniform(0.4, 1.2), rng.uniform(0.4, 1.2)};
    const auto h = cart4_to_hyperspherical(u);

    Amplitude lap(0, 0);
    for (int axis = 0; axis < 4; ++axis) {
      auto f = [&](double v) {
        Cartesian4 w = u;
        w.set_component(axis, v);
        return lifted(w);
      };
      lap += fd::d2_rich(f, u.component(axis), 2e-3);
    }

    auto fu = [&](double uu) {
      return lifted(Hyperspherical4{uu, h.alpha, h.beta, h.gamma});
    };
    const Amplitude duu = fd::d2_rich(fu, h.u, 2e-3);
    const Amplitude du = fd::d1_rich(fu, h.u, 2e-3);
    auto fang = [&](double a, double b, double g) {
      return lifted(Hyperspherical4{h.u, a, b, g});
    };
    const Amplitude l2 = apply_L2(fang, h.alpha, h.beta, h.gamma);
    const Amplitude rhs =
        duu + 3.0 / h.u * du - 4.0 / (h.u * h.u) * l2;

    CHECK(std::abs(lap - rhs) <=
          1e-5 * std::max(std::abs(lap), std::abs(rhs)));
  }
}
