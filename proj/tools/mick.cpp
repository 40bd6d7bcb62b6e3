// Command-line front end: spectra, wavefunction evaluation on grids,
// interbasis coefficient tables, and the verification suites.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mick/basis_mic.hpp"
#include "mick/channels.hpp"
#include "mick/interbasis.hpp"
#include "mick/ks_duality.hpp"
#include "mick/oscillator4d.hpp"
#include "mick/verify.hpp"

using nlohmann::json;
using namespace mick;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string fmt_qn(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GlobalOpts {
  double hbar = 1.0, mass = 1.0, charge = 1.0;
  std::string s = "0", m = "0";
  double lambda1 = 0.0, lambda2 = 0.0;
  bool channel_given = false;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  int grid_radial = 96, grid_angular = 64, grid_azimuthal = 32;
  int workers = 0;

  Channel channel() const {
    return Channel(HalfInt::parse(s), HalfInt::parse(m), lambda1, lambda2,
                   Constants{hbar, mass, charge});
  }
};

void write_output(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n')
      std::cout << '\n';
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f)
      throw std::runtime_error("cannot open output file: " + g.out);
    f << text;
  }
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const GlobalOpts& g, double n_max) {
  const Channel ch = g.channel();
  json rows = json::array();
  std::string csv = "n,j_min,j_max,energy,epsilon,omega_dual,eps_osc,N\n";
  for (HalfInt n = ch.n_min(); n.value() <= n_max + 1e-9; n = n + 1) {
    const double e = energy_mic(n, ch);
    const double eps = epsilon_scale(n, ch);
    const auto params = osc_params_from_level(n, ch);
    const int N = static_cast<int>(n.twice() - 2);
    const double eps_osc = osc_energy(N, params, ch);
    json row;
    row["n"] = n.str();
    row["j_min"] = ch.m_plus().str();
    row["j_max"] = (n - 1).str();
    row["energy"] = e;
    row["epsilon"] = eps;
    row["omega_dual"] = params.omega;
    row["eps_osc"] = eps_osc;
    row["N"] = N;
    rows.push_back(row);
    csv += fmt_qn(n.value()) + "," + fmt_qn(ch.m_plus().value()) + "," +
           fmt_qn(n.value() - 1.0) + "," + fmt(e) + "," + fmt(eps) + "," +
           fmt(params.omega) + "," + fmt(eps_osc) + "," + std::to_string(N) + "\n";
  }
  write_output(g, g.format == "csv" ? csv : rows.dump(2));
  return 0;
}

// -------------------------------------------------------------------- eval

struct EvalOpts {
  std::string basis = "spherical";
  std::string n = "1", j = "0", L = "0";
  int n1 = 0, n2 = 0, N = 0, N1 = 0, N2 = 0;
  double r_min = 0.5, r_max = 5.0;
  int count = 10;
  double theta = 1.0471975511965976, phi = 0.0; // pi/3
  double xi = 1.0, eta = 1.0;
  double alpha = 0.0, beta = 1.0471975511965976, gamma = 0.0;
  double rho2 = 1.0, phi1 = 0.0, phi2 = 0.0;
};

int cmd_eval(const GlobalOpts& g, const EvalOpts& e) {
  const Channel ch = g.channel();
  json rows = json::array();
  std::string csv;

  auto push = [&](std::initializer_list<std::pair<const char*, double>> cols,
                  const Amplitude& v) {
    json row;
    std::string line;
    for (const auto& [k, x] : cols) {
      row[k] = x;
      line += fmt(x) + ",";
    }
    row["re"] = v.real();
    row["im"] = v.imag();
    csv += line + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
    rows.push_back(row);
  };

  const double step = e.count > 1 ? (e.r_max - e.r_min) / (e.count - 1) : 0.0;

  if (e.basis == "spherical") {
    SphericalQN qn(HalfInt::parse(e.n), HalfInt::parse(e.j), ch);
    SphericalState st(qn);
    csv = "r,theta,phi,re,im\n";
    for (int i = 0; i < e.count; ++i) {
      const double r = e.r_min + step * i;
      const Spherical3 p{r, e.theta, e.phi};
      push({{"r", r}, {"theta", e.theta}, {"phi", e.phi}}, st(p));
    }
  } else if (e.basis == "parabolic") {
    ParabolicQN qn(e.n1, e.n2, ch);
    ParabolicState st(qn);
    csv = "xi,eta,phi,re,im\n";
    for (int i = 0; i < e.count; ++i) {
      const double xi = e.r_min + step * i;
      const Parabolic3 p{xi, e.eta, e.phi};
      push({{"xi", xi}, {"eta", e.eta}, {"phi", e.phi}}, st(p));
    }
  } else if (e.basis == "osc-spherical") {
    OscSphericalQN qn{e.N, HalfInt::parse(e.L), ch.m(), ch.s()};
    const HalfInt n = HalfInt::from_twice(e.N + 2);
    const auto params = osc_params_from_level(n, ch);
    OscSphericalState st(qn, ch, params);
    csv = "u,alpha,beta,gamma,re,im\n";
    for (int i = 0; i < e.count; ++i) {
      const double u = e.r_min + step * i;
      const Hyperspherical4 h{u, e.alpha, e.beta, e.gamma};
      push({{"u", u}, {"alpha", e.alpha}, {"beta", e.beta}, {"gamma", e.gamma}},
           st(h));
    }
  } else if (e.basis == "osc-cylindrical") {
    OscCylindricalQN qn{e.N1, e.N2, (ch.m() + ch.s()).as_integer(),
                        (ch.m() - ch.s()).as_integer()};
    const auto params = osc_params_from_level(
        correspondence_parabolic(qn, ch).n(), ch);
    OscCylindricalState st(qn, ch, params);
    csv = "rho1,rho2,phi1,phi2,re,im\n";
    for (int i = 0; i < e.count; ++i) {
      const double rho1 = e.r_min + step * i;
      const DoublePolar4 d{rho1, e.rho2, e.phi1, e.phi2};
      push({{"rho1", rho1}, {"rho2", e.rho2}, {"phi1", e.phi1}, {"phi2", e.phi2}},
           st(d));
    }
  } else {
    throw CLI::ValidationError(
        "--basis must be one of spherical|parabolic|osc-spherical|osc-cylindrical");
  }

  write_output(g, g.format == "csv" ? csv : rows.dump(2));
  return 0;
}

// ------------------------------------------------------------ coefficients

std::string coefficient_csv(const Channel& ch, double n_max) {
  std::string csv = "n,n1,n2,2m,2s,2j,W\n";
  for (const auto& q : verify::parabolic_states(ch, n_max)) {
    for (const auto& [j, w] : expand_parabolic_in_spherical(q)) {
      csv += fmt_qn(q.n().value()) + "," + std::to_string(q.n1) + "," +
             std::to_string(q.n2) + "," + std::to_string(ch.m().twice()) + "," +
             std::to_string(ch.s().twice()) + "," + std::to_string(j.twice()) +
             "," + fmt(w) + "\n";
    }
  }
  return csv;
}

int cmd_coefficients(const GlobalOpts& g, double n_max) {
  write_output(g, coefficient_csv(g.channel(), n_max));
  return 0;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const GlobalOpts& g, const std::string& section, double n_max,
               std::optional<double> tol_override,
               const std::string& emit_coefficients) {
  verify::SuiteOptions opt;
  if (g.channel_given)
    opt.channels = {g.channel()};
  // sampled FD checks stay at n <= 3; quadrature checks honour --n-max
  opt.n_max = std::min(n_max, 3.0);
  opt.n_max_ortho = n_max;
  opt.grids = {g.grid_radial, g.grid_angular, g.grid_azimuthal};
  opt.seed = g.seed;
  opt.workers = g.workers;
  opt.tolerance_override = tol_override;
  if (section != "all")
    opt.sections = {section};

  const auto reports = verify::run_suite(opt);
  write_output(g, verify::reports_to_json(reports).dump(2));

  if (!emit_coefficients.empty()) {
    std::ofstream f(emit_coefficients, std::ios::binary);
    if (!f)
      throw std::runtime_error("cannot open output file: " + emit_coefficients);
    for (const auto& ch : opt.channels.empty() ? verify::default_channels()
                                               : opt.channels)
      f << coefficient_csv(ch, n_max);
  }
  return verify::all_passed(reports) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized MIC-Kepler / 4D double singular oscillator toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--hbar", g.hbar, "Planck constant (default 1)");
  app.add_option("--mass", g.mass, "reduced mass (default 1)");
  app.add_option("--charge", g.charge, "electric charge e (default 1)");
  auto* so = app.add_option("--s", g.s, "monopole number s (half-integers as p/2 or decimal)");
  auto* mo = app.add_option("--m", g.m, "azimuthal quantum number m");
  auto* l1 = app.add_option("--lambda1", g.lambda1, "strength of the 1/(r(r+z)) term");
  auto* l2 = app.add_option("--lambda2", g.lambda2, "strength of the 1/(r(r-z)) term");
  app.add_option("--format", g.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_option("--grid-radial", g.grid_radial, "radial quadrature nodes");
  app.add_option("--grid-angular", g.grid_angular, "polar-angle quadrature nodes");
  app.add_option("--grid-azimuthal", g.grid_azimuthal, "azimuthal quadrature nodes");
  app.add_option("--workers", g.workers, "verification worker threads (0 = auto)");

  double n_max = 3.0;

  auto* spectrum = app.add_subcommand("spectrum", "bound and dual oscillator spectra");
  spectrum->fallthrough();
  spectrum->add_option("--n-max", n_max, "largest principal quantum number");

  EvalOpts e;
  auto* eval = app.add_subcommand("eval", "evaluate a basis state on a grid");
  eval->fallthrough();
  eval->add_option("--basis", e.basis,
                   "spherical|parabolic|osc-spherical|osc-cylindrical");
  eval->add_option("--n", e.n, "principal quantum number (spherical basis)");
  eval->add_option("--j", e.j, "orbital label j (spherical basis)");
  eval->add_option("--n1", e.n1, "parabolic n1");
  eval->add_option("--n2", e.n2, "parabolic n2");
  eval->add_option("--N", e.N, "oscillator level N (osc-spherical)");
  eval->add_option("--L", e.L, "oscillator orbital label L (osc-spherical)");
  eval->add_option("--N1", e.N1, "oscillator N1 (osc-cylindrical)");
  eval->add_option("--N2", e.N2, "oscillator N2 (osc-cylindrical)");
  eval->add_option("--min", e.r_min, "sweep start (r, xi, u or rho1)");
  eval->add_option("--max", e.r_max, "sweep end");
  eval->add_option("--count", e.count, "number of sweep points");
  eval->add_option("--theta", e.theta, "fixed polar angle");
  eval->add_option("--phi", e.phi, "fixed azimuth");
  eval->add_option("--eta", e.eta, "fixed eta (parabolic)");
  eval->add_option("--alpha", e.alpha, "fixed alpha (osc-spherical)");
  eval->add_option("--beta", e.beta, "fixed beta (osc-spherical)");
  eval->add_option("--gamma", e.gamma, "fixed gamma (osc-spherical)");
  eval->add_option("--rho2", e.rho2, "fixed rho2 (osc-cylindrical)");
  eval->add_option("--phi1", e.phi1, "fixed phi1 (osc-cylindrical)");
  eval->add_option("--phi2", e.phi2, "fixed phi2 (osc-cylindrical)");

  auto* coeffs = app.add_subcommand("coefficients",
                                    "interbasis coefficient table as CSV");
  coeffs->fallthrough();
  coeffs->add_option("--n-max", n_max, "largest principal quantum number");

  auto* ver = app.add_subcommand("verify", "run verification checks");
  ver->fallthrough();
  std::string section = "all";
  ver->add_option("section", section,
                  "ortho|residual-mic|residual-osc|eigen|interbasis|duality|spectrum|all")
      ->check(CLI::IsMember({"ortho", "residual-mic", "residual-osc", "eigen",
                             "interbasis", "duality", "spectrum", "all"}));
  ver->add_option("--n-max", n_max, "largest principal quantum number");
  std::optional<double> tol_override;
  double tol_value = 0.0;
  auto* tol_opt = ver->add_option("--tolerance", tol_value,
                                  "override every check tolerance");
  std::string emit_coefficients;
  ver->add_option("--emit-coefficients", emit_coefficients,
                  "also write the interbasis coefficient CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  g.channel_given = so->count() > 0 || mo->count() > 0 || l1->count() > 0 ||
                    l2->count() > 0;
  if (tol_opt->count() > 0)
    tol_override = tol_value;

  try {
    if (*spectrum)
      return cmd_spectrum(g, n_max);
    if (*eval)
      return cmd_eval(g, e);
    if (*coeffs)
      return cmd_coefficients(g, n_max);
    if (*ver)
      return cmd_verify(g, section, n_max, tol_override, emit_coefficients);
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
