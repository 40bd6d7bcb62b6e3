#pragma once

#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>

namespace mick::specfun {

namespace detail {

inline bool near_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) <= tol;
}

} // namespace detail

// Natural log of Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
// Relative error stays below ~1e-14 over [1e-3, 1e4].
inline double ln_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("ln_gamma: requires finite x > 0");

  static constexpr double g = 7.0;
  static constexpr double coef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  static const double half_log_2pi = 0.5 * std::log(2.0 * M_PI);

  if (x < 0.5) {
    // reflection keeps the series argument in its accurate range
    return std::log(M_PI) - std::log(std::sin(M_PI * x)) - ln_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double series = coef[0];
  for (int i = 1; i < 9; ++i)
    series += coef[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  return half_log_2pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

namespace detail {

// ln|Gamma(x)| with sign, valid for any non-pole real x. Only the
// analytically continued Clebsch-Gordan sum needs negative arguments.
struct SignedLnGamma {
  double log_abs;
  int sign;
};

inline SignedLnGamma ln_gamma_signed(double x) {
  if (x > 0.0)
    return {ln_gamma(x), 1};
  if (near_integer(x) && x <= 0.5)
    throw std::domain_error("ln_gamma_signed: pole at nonpositive integer");
  // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
  const double s = std::sin(M_PI * x);
  return {std::log(M_PI) - std::log(std::abs(s)) - ln_gamma(1.0 - x),
          s > 0.0 ? 1 : -1};
}

} // namespace detail

// Jacobi polynomial P_n^{(alpha,beta)}(x) by the ascending three-term
// recurrence, seeded from the closed degree-0/1 forms.
inline double jacobi_p(int n, double alpha, double beta, double x) {
  if (n < 0)
    throw std::domain_error("jacobi_p: requires degree n >= 0");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::domain_error("jacobi_p: requires alpha, beta > -1");
  if (std::abs(x) > 1.0)
    throw std::domain_error("jacobi_p: requires |x| <= 1");

  if (n == 0)
    return 1.0;
  double pkm1 = 1.0;
  double pk = 0.5 * (alpha - beta + (alpha + beta + 2.0) * x);
  for (int k = 2; k <= n; ++k) {
    const double ab = alpha + beta;
    const double c1 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0);
    const double c2 = (2.0 * k + ab - 1.0) *
                      ((2.0 * k + ab) * (2.0 * k + ab - 2.0) * x +
                       alpha * alpha - beta * beta);
    const double c3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab);
    const double pkp1 = (c2 * pk - c3 * pkm1) / c1;
    pkm1 = pk;
    pk = pkp1;
  }
  return pk;
}

// Confluent hypergeometric F(a; c; x) in the terminating case a = -k,
// k a nonnegative integer. Term-by-term with compensated summation.
inline double kummer_1f1(double a, double c, double x) {
  if (!(c > 0.0))
    throw std::domain_error("kummer_1f1: requires c > 0");
  if (x < 0.0)
    throw std::domain_error("kummer_1f1: requires x >= 0");
  if (!detail::near_integer(a) || a > 1e-9)
    throw std::domain_error("kummer_1f1: only terminating a = 0, -1, -2, ... supported");

  const int k = static_cast<int>(std::llround(-a));
  double sum = 1.0, comp = 0.0, term = 1.0;
  for (int i = 0; i < k; ++i) {
    term *= (a + i) * x / ((c + i) * (i + 1.0));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Clebsch-Gordan coefficient C^{c,gamma}_{a,alpha; b,beta} continued to real
// arguments: the Racah single sum with every factorial read as Gamma(.+1).
// The sum runs over the integer k-window carved out by the slots that are
// (numerically) integers; non-integer slots never strike a Gamma pole and so
// impose no bound. Selection rule gamma = alpha + beta; violation returns 0.
inline double cg_real(double a, double alpha, double b, double beta, double c,
                      double gamma) {
  constexpr double tol = 1e-9;
  if (std::abs(alpha + beta - gamma) > tol)
    return 0.0;

  const double t1 = a + b - c;
  const double t2 = a - b + c;
  const double t3 = -a + b + c;
  const double pre_args[8] = {t1,        t2,        t3,       a + alpha,
                              a - alpha, b + beta,  b - beta, c + gamma};
  // c - gamma handled with the same rule below
  const double cmg = c - gamma;
  for (double q : {pre_args[0], pre_args[1], pre_args[2], pre_args[3],
                   pre_args[4], pre_args[5], pre_args[6], pre_args[7], cmg}) {
    if (q < -tol) {
      if (detail::near_integer(q))
        return 0.0; // coupling bound fails at an exact integer: genuine zero
      throw std::domain_error(
          "cg_real: negative non-integer Gamma argument in the prefactor");
    }
  }

  // Upper summation bound from integer-valued decreasing slots.
  long long kmax = std::numeric_limits<long long>::max();
  bool terminated = false;
  for (double q : {t1, a - alpha, b + beta}) {
    if (detail::near_integer(q)) {
      kmax = std::min(kmax, std::llround(q));
      terminated = true;
    }
  }
  if (!terminated)
    throw std::domain_error("cg_real: no integer slot terminates the sum");

  // Lower bound from integer-valued increasing slots.
  long long kmin = 0;
  const double low1 = c - b + alpha;
  const double low2 = c - a - beta;
  for (double q : {low1, low2}) {
    if (detail::near_integer(q))
      kmin = std::max(kmin, -std::llround(q));
  }
  if (kmin > kmax)
    return 0.0;

  const double clamp0 = 0.0; // Gamma(1) for slots within tol of zero
  auto safe = [&](double q) { return q < clamp0 && q > -tol ? 0.0 : q; };

  double log_pref = std::log(2.0 * c + 1.0);
  log_pref += ln_gamma(safe(t1) + 1.0) + ln_gamma(safe(t2) + 1.0) +
              ln_gamma(safe(t3) + 1.0) - ln_gamma(a + b + c + 2.0);
  log_pref += ln_gamma(safe(a + alpha) + 1.0) + ln_gamma(safe(a - alpha) + 1.0) +
              ln_gamma(safe(b + beta) + 1.0) + ln_gamma(safe(b - beta) + 1.0) +
              ln_gamma(safe(c + gamma) + 1.0) + ln_gamma(safe(cmg) + 1.0);
  log_pref *= 0.5;

  double sum = 0.0, comp = 0.0;
  for (long long k = kmin; k <= kmax; ++k) {
    const double kd = static_cast<double>(k);
    const double slot[6] = {kd,          t1 - kd,       a - alpha - kd,
                            b + beta - kd, low1 + kd,   low2 + kd};
    double log_den = 0.0;
    int sign = (k % 2 == 0) ? 1 : -1;
    bool zero_term = false;
    for (double q : slot) {
      const double arg = safe(q) + 1.0;
      if (arg <= tol && detail::near_integer(arg)) {
        zero_term = true; // 1/Gamma at a pole
        break;
      }
      const auto lg = detail::ln_gamma_signed(arg);
      log_den += lg.log_abs;
      sign *= lg.sign;
    }
    if (zero_term)
      continue;
    const double term = sign * std::exp(log_pref - log_den);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

} // namespace mick::specfun
