#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mick/inner_product.hpp"
#include "mick/quadrature.hpp"
#include "mick/specfun.hpp"
#include "oracles.hpp"

using namespace mick::specfun;

TEST_CASE("ln_gamma anchors and accuracy") {
  CHECK(std::abs(ln_gamma(1.0)) < 1e-14);
  CHECK(ln_gamma(0.5) == Catch::Approx(std::log(std::sqrt(M_PI))).epsilon(1e-14));
  CHECK(ln_gamma(5.0) == Catch::Approx(std::log(24.0)).epsilon(1e-14));

  // against the C library as an independent oracle
  for (double x = 1e-3; x < 1e4; x *= 1.37) {
    const double ref = std::lgamma(x);
    CHECK(std::abs(ln_gamma(x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
  }

  CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(ln_gamma(-1.5), std::domain_error);
  CHECK_THROWS_AS(ln_gamma(std::nan("")), std::domain_error);
}

TEST_CASE("ln_gamma recurrence") {
  for (double x = 0.1; x <= 100.0; x += 0.37) {
    const double lhs = ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x);
    CHECK(std::abs(lhs) <= 1e-12);
  }
}

TEST_CASE("jacobi_p anchors") {
  CHECK(jacobi_p(0, 0.7, 1.3, 0.5) == 1.0);
  CHECK(jacobi_p(1, 0.0, 0.0, 0.3) == Catch::Approx(0.3).epsilon(1e-15));
  const double want = oracle::jacobi_series(2, 0.5, 1.5, 0.2);
  CHECK(jacobi_p(2, 0.5, 1.5, 0.2) == Catch::Approx(want).epsilon(1e-12));

  CHECK_THROWS_AS(jacobi_p(-1, 0, 0, 0), std::domain_error);
  CHECK_THROWS_AS(jacobi_p(2, 0, 0, 1.5), std::domain_error);
  CHECK_THROWS_AS(jacobi_p(2, -1.5, 0, 0.2), std::domain_error);
}

TEST_CASE("jacobi_p against the series oracle") {
  const double params[4] = {0.0, 0.37, 1.5, 2.83};
  for (double a : params)
    for (double b : params)
      for (int n = 0; n <= 10; ++n) {
        double scale = 1.0;
        for (int i = 0; i < 21; ++i) {
          const double x = -1.0 + 2.0 * i / 20.0;
          scale = std::max(scale, std::abs(oracle::jacobi_series(n, a, b, x)));
        }
        for (int i = 0; i < 21; ++i) {
          const double x = -1.0 + 2.0 * i / 20.0;
          const double got = jacobi_p(n, a, b, x);
          const double want = oracle::jacobi_series(n, a, b, x);
          CHECK(std::abs(got - want) <= 1e-11 * scale);
        }
      }
}

TEST_CASE("jacobi orthogonality under a 64-node Gauss rule") {
  // The weight-matched 64-node rule holds the orthogonality integrals at
  // 1e-9; a plain Legendre rule cannot (the fractional endpoint weights
  // limit it to ~1e-4), which the verification reports call out.
  const double params[4] = {0.0, 0.37, 1.5, 2.83};
  for (double a : params)
    for (double b : params) {
      const auto rule = mick::quad::gauss_jacobi(64, a, b);
      for (int m = 0; m <= 10; ++m)
        for (int n = m + 1; n <= 10; ++n) {
          const double v = rule.integrate(
              [&](double x) { return jacobi_p(m, a, b, x) * jacobi_p(n, a, b, x); });
          CHECK(std::abs(v) <= 1e-9);
        }
    }
}

TEST_CASE("kummer_1f1 anchors and polynomial property") {
  CHECK(kummer_1f1(-3, 2.0, 0.0) == 1.0);
  CHECK(kummer_1f1(-1, 2.5, 1.0) == Catch::Approx(0.6).epsilon(1e-14));
  CHECK(kummer_1f1(-2, 1.0, 0.5) == Catch::Approx(0.125).epsilon(1e-14));

  // F(-k; c; x) is a degree-k polynomial: its (k+1)-th finite difference
  // in x vanishes.
  for (int k = 1; k <= 5; ++k)
    for (double c : {0.7, 1.0, 2.5}) {
      const double h = 0.5;
      double diff = 0.0;
      for (int i = 0; i <= k + 1; ++i) {
        const double binom = std::exp(ln_gamma(k + 2.0) - ln_gamma(i + 1.0) -
                                      ln_gamma(k + 2.0 - i));
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        diff += sign * binom * kummer_1f1(-k, c, 1.0 + i * h);
      }
      CHECK(std::abs(diff) <= 1e-9);
    }

  CHECK_THROWS_AS(kummer_1f1(-2, -1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(kummer_1f1(-1.5, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(kummer_1f1(-2, 1.0, -0.5), std::domain_error);
}

TEST_CASE("cg_real anchors") {
  CHECK(cg_real(0, 0, 0, 0, 0, 0) == Catch::Approx(1.0).epsilon(1e-13));
  CHECK(cg_real(0.5, 0.5, 0.5, 0.5, 1, 1) == Catch::Approx(1.0).epsilon(1e-13));
  const double want = oracle::cg_half_half_oracle();
  CHECK(cg_real(0.5, 0.5, 0.5, -0.5, 1, 0) == Catch::Approx(want).epsilon(1e-13));
  // selection rule violated: exactly zero
  CHECK(cg_real(1, 1, 1, 1, 1, 1) == 0.0);
  // outside the triangle at an integer slot: zero, not an error
  CHECK(cg_real(1, 0, 1, 0, 3, 0) == 0.0);
  // invalid continuation: negative non-integer prefactor argument
  CHECK_THROWS_AS(cg_real(0.25, 1.5, 1, -0.5, 1.25, 1.0), std::domain_error);
}

TEST_CASE("cg_real column orthonormality for a,b <= 2") {
  double worst = 0.0;
  for (int ta = 0; ta <= 4; ++ta)
    for (int tb = 0; tb <= 4; ++tb)
      for (int tc = std::abs(ta - tb); tc <= ta + tb; tc += 2)
        for (int tg = -tc; tg <= tc; tg += 2) {
          const double a = 0.5 * ta, b = 0.5 * tb, c = 0.5 * tc, g = 0.5 * tg;
          double sum = 0.0;
          for (int tal = -ta; tal <= ta; tal += 2) {
            const double al = 0.5 * tal, be = g - al;
            if (std::abs(be) > b + 1e-9)
              continue;
            const double v = cg_real(a, al, b, be, c, g);
            sum += v * v;
          }
          worst = std::max(worst, std::abs(sum - 1.0));
        }
  CHECK(worst <= 1e-12);
}
