// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mick/verify.hpp"
#include "oracles.hpp"

using namespace mick;
using verify::VerificationReport;

namespace {

struct Criterion {
  std::string label;
  double worst_ratio = 0.0; // error/tolerance, pass iff <= 1
  std::vector<std::string> notes;
  bool pass() const { return worst_ratio <= 1.0; }
};

// worst error/tolerance ratio over the reports whose name starts with prefix
void fold_reports(Criterion& c, const std::vector<VerificationReport>& reports,
                  const std::string& prefix) {
  for (const auto& r : reports) {
    if (r.check_name.rfind(prefix, 0) != 0)
      continue;
    const double ratio = r.tolerance > 0 ? r.max_error / r.tolerance : 1e300;
    c.worst_ratio = std::max(c.worst_ratio, ratio);
    for (const auto& n : r.notes)
      if (n.find("flag:") != std::string::npos) {
        const std::string line = r.check_name + ": " + n;
        if (std::find(c.notes.begin(), c.notes.end(), line) == c.notes.end())
          c.notes.push_back(line);
      }
  }
}

Criterion criterion_specfun() {
  using namespace mick::specfun;
  Criterion c{"special-function kernel (examples and invariants)"};
  auto fold = [&](double err, double tol) {
    c.worst_ratio = std::max(c.worst_ratio, err / tol);
  };

  // ln_gamma anchors, accuracy window, recurrence
  fold(std::abs(ln_gamma(1.0)), 1e-13);
  fold(std::abs(ln_gamma(0.5) - std::log(std::sqrt(M_PI))), 1e-13);
  fold(std::abs(ln_gamma(5.0) - std::log(24.0)), 1e-13);
  for (double x = 1e-3; x < 1e4; x *= 1.19) {
    const double ref = std::lgamma(x);
    fold(std::abs(ln_gamma(x) - ref) / std::max(1.0, std::abs(ref)), 1e-13);
  }
  for (double x = 0.1; x <= 100.0; x += 0.13)
    fold(std::abs(ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x)), 1e-12);

  // jacobi_p anchors, series oracle, orthogonality
  fold(std::abs(jacobi_p(0, 0.3, 0.9, 0.2) - 1.0), 1e-13);
  fold(std::abs(jacobi_p(1, 0.0, 0.0, 0.3) - 0.3), 1e-13);
  fold(std::abs(jacobi_p(2, 0.5, 1.5, 0.2) - oracle::jacobi_series(2, 0.5, 1.5, 0.2)),
       1e-11);
  const double params[4] = {0.0, 0.37, 1.5, 2.83};
  for (double a : params)
    for (double b : params) {
      for (int n = 0; n <= 10; ++n) {
        double scale = 1.0;
        for (int i = 0; i < 21; ++i)
          scale = std::max(scale, std::abs(oracle::jacobi_series(n, a, b,
                                                                 -1.0 + 0.1 * i)));
        for (int i = 0; i < 21; ++i) {
          const double x = -1.0 + 0.1 * i;
          fold(std::abs(jacobi_p(n, a, b, x) - oracle::jacobi_series(n, a, b, x)) /
                   scale,
               1e-11);
        }
      }
      const auto rule = quad::gauss_jacobi(64, a, b);
      for (int m = 0; m <= 10; ++m)
        for (int n = m + 1; n <= 10; ++n)
          fold(std::abs(rule.integrate([&](double x) {
                 return jacobi_p(m, a, b, x) * jacobi_p(n, a, b, x);
               })),
               1e-9);
    }
  {
    // the plain 64-node Legendre rule cannot certify the fractional-weight
    // integrals; its deviation is reported, the matched rule is the gate
    const auto gl = quad::gauss_legendre(64);
    double worst = 0.0;
    for (int m = 0; m <= 10; ++m)
      for (int n = m + 1; n <= 10; ++n)
        worst = std::max(worst, std::abs(gl.integrate([&](double x) {
                  return std::pow(1.0 - x, 0.37) * std::pow(1.0 + x, 0.37) *
                         jacobi_p(m, 0.37, 0.37, x) * jacobi_p(n, 0.37, 0.37, x);
                })));
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "plain Legendre-64 stalls at %.1e on fractional-weight "
                  "orthogonality; the weight-matched Gauss rule is the instrument",
                  worst);
    c.notes.push_back(buf);
  }

  // kummer anchors and the degree-k polynomial property
  fold(std::abs(kummer_1f1(-3, 2.0, 0.0) - 1.0), 1e-13);
  fold(std::abs(kummer_1f1(-1, 2.5, 1.0) - 0.6), 1e-13);
  fold(std::abs(kummer_1f1(-2, 1.0, 0.5) - 0.125), 1e-13);
  for (int k = 1; k <= 5; ++k)
    for (double cc : {0.7, 1.0, 2.5}) {
      double diff = 0.0;
      for (int i = 0; i <= k + 1; ++i) {
        const double binom = std::exp(ln_gamma(k + 2.0) - ln_gamma(i + 1.0) -
                                      ln_gamma(k + 2.0 - i));
        diff += ((i % 2 == 0) ? 1.0 : -1.0) * binom * kummer_1f1(-k, cc, 1.0 + 0.5 * i);
      }
      fold(std::abs(diff), 1e-9);
    }

  // continued Clebsch-Gordan anchors and SU(2) orthonormality
  fold(std::abs(cg_real(0, 0, 0, 0, 0, 0) - 1.0), 1e-12);
  fold(std::abs(cg_real(0.5, 0.5, 0.5, 0.5, 1, 1) - 1.0), 1e-12);
  fold(std::abs(cg_real(0.5, 0.5, 0.5, -0.5, 1, 0) - oracle::cg_half_half_oracle()),
       1e-12);
  for (int ta = 0; ta <= 4; ++ta)
    for (int tb = 0; tb <= 4; ++tb)
      for (int tc = std::abs(ta - tb); tc <= ta + tb; tc += 2)
        for (int tg = -tc; tg <= tc; tg += 2) {
          double sum = 0.0;
          for (int tal = -ta; tal <= ta; tal += 2) {
            const double al = 0.5 * tal, be = 0.5 * tg - al;
            if (std::abs(be) > 0.5 * tb + 1e-9)
              continue;
            const double v =
                cg_real(0.5 * ta, al, 0.5 * tb, be, 0.5 * tc, 0.5 * tg);
            sum += v * v;
          }
          fold(std::abs(sum - 1.0), 1e-12);
        }
  c.notes.push_back("continued-argument regime certified transitively by the "
                    "interbasis oracle (criterion 5)");
  return c;
}

Criterion criterion_determinism() {
  Criterion c{"determinism: identical reruns are byte-identical"};
  verify::SuiteOptions opt;
  opt.n_max = 2.0;
  opt.n_max_ortho = 2.5;
  opt.grids = {48, 32, 16};
  opt.points = 10;
  opt.seed = 1;
  const std::string a = verify::reports_to_json(verify::run_suite(opt)).dump(2);
  const std::string b = verify::reports_to_json(verify::run_suite(opt)).dump(2);
  c.worst_ratio = (a == b && !a.empty()) ? 0.0 : 2.0;
  return c;
}

} // namespace

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  const auto t0 = std::chrono::steady_clock::now();

  // one full suite run at acceptance scale feeds criteria 1-6
  verify::SuiteOptions opt;
  opt.n_max = 3.0;      // sampled residual/eigen/duality checks
  opt.n_max_ortho = 4.0; // quadrature checks
  opt.seed = 1;
  const auto reports = verify::run_suite(opt);

  std::vector<Criterion> cs;
  {
    Criterion c{"spectrum anchor: E_n = -1/(2n^2) at lambda = s = 0, n <= 10"};
    fold_reports(c, reports, "spectrum/");
    cs.push_back(c);
  }
  {
    Criterion c{"orthonormality of the spherical and parabolic bases (n <= 4, "
                "stated grids, doubling held)"};
    fold_reports(c, reports, "orthonormality/spherical3");
    fold_reports(c, reports, "orthonormality/parabolic3");
    fold_reports(c, reports, "orthonormality/osc4");
    cs.push_back(c);
  }
  {
    Criterion c{"Hamiltonian residuals, bound system and dual oscillator (n <= 3)"};
    fold_reports(c, reports, "residual/");
    cs.push_back(c);
  }
  {
    Criterion c{"operator eigenvalues: angular, J_z, fibre derivative"};
    fold_reports(c, reports, "eigen/");
    cs.push_back(c);
  }
  {
    Criterion c{"interbasis coefficients: oracle match, unitarity, reconstruction"};
    fold_reports(c, reports, "interbasis/");
    cs.push_back(c);
  }
  {
    Criterion c{"duality: pointwise correspondence, quadratic-map identity, "
                "spectrum dictionary"};
    fold_reports(c, reports, "duality/");
    cs.push_back(c);
  }
  cs.push_back(criterion_specfun());
  cs.push_back(criterion_determinism());

  bool all = true;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const bool ok = cs[i].pass();
    all = all && ok;
    std::printf("criterion %zu: %s (worst error/tolerance = %.3e) - %s\n", i + 1,
                ok ? "PASS" : "FAIL", cs[i].worst_ratio, cs[i].label.c_str());
    for (const auto& n : cs[i].notes)
      std::printf("  note: %s\n", n.c_str());
  }

  const auto dt = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::printf("%s (%zu criteria, %.1f s)\n", all ? "ALL PASS" : "FAILURES PRESENT",
              cs.size(), dt);
  return all ? 0 : 1;
}
