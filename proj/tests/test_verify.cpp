#include <catch2/catch_amalgamated.hpp>

#include "mick/verify.hpp"

using namespace mick;
using namespace mick::verify;

TEST_CASE("spectrum anchors") {
  const auto rep = check_spectrum_anchor();
  CHECK(rep.passed);
  CHECK(rep.max_error <= 1e-14);

  const auto eps = check_epsilon_energy(
      Channel(HalfInt::parse("1/2"), HalfInt::parse("1/2"), 0.5, 0.2), 4.0);
  CHECK(eps.passed);
}

TEST_CASE("report invariants") {
  const auto rep = check_ks_identity(200, 3);
  CHECK(rep.passed == (rep.max_error <= rep.tolerance));
  const auto j = rep.to_json();
  CHECK(j.contains("check_name"));
  CHECK(j.contains("parameters"));
  CHECK(j.contains("max_error"));
  CHECK(j.contains("tolerance"));
  CHECK(j.contains("passed"));
  CHECK(j.contains("grid_meta"));
  CHECK(j.contains("notes"));
}

TEST_CASE("orthonormality check on a reduced grid") {
  const Channel ch(HalfInt::whole(0), HalfInt::whole(0), 0.0, 0.0);
  GridSizes small{48, 32, 16};
  const auto rep = check_orthonormality(BasisKind::spherical3, ch, 2.0, small);
  CHECK(rep.passed);
  CHECK(rep.grid_meta["deviation_base"].get<double>() <= 1e-10);
  CHECK(rep.grid_meta["deviation_doubled"].get<double>() <= 1e-10);
}

TEST_CASE("single-channel suite passes and reproduces bit-for-bit") {
  SuiteOptions opt;
  opt.channels = {Channel(HalfInt::parse("1/2"), HalfInt::parse("1/2"), 0.5, 0.2)};
  opt.n_max = 2.5;
  opt.n_max_ortho = 2.5;
  opt.grids = {48, 32, 16};
  opt.points = 10;
  opt.seed = 99;
  opt.workers = 2;

  const auto a = run_suite(opt);
  CHECK(all_passed(a));
  const auto b = run_suite(opt);
  CHECK(reports_to_json(a).dump() == reports_to_json(b).dump());

  // the tolerance override forces failure and is recorded
  opt.tolerance_override = 1e-30;
  opt.sections = {"eigen"};
  const auto c = run_suite(opt);
  CHECK_FALSE(all_passed(c));
  CHECK_FALSE(c.empty());
  CHECK_FALSE(c.front().notes.empty());
}

TEST_CASE("interbasis check flags the swapped index placement") {
  const Channel ch(HalfInt::parse("1/2"), HalfInt::parse("1/2"), 0.5, 0.2);
  GridSizes small{48, 32, 16};
  const auto rep = check_interbasis_3d(ch, 2.5, small, 10, 5);
  CHECK(rep.passed);
  bool flagged = false;
  for (const auto& n : rep.notes)
    if (n.find("coefficient-index flag") != std::string::npos)
      flagged = true;
  CHECK(flagged);
}
