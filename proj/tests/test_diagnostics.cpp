#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dropflow/annulus_oracle.hpp"
#include "dropflow/diagnostics.hpp"
#include "dropflow/shapes.hpp"

using namespace dropflow;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("evolution identities: circle with unit shrink") {
  auto disk = shapes::disk_boundary(1.0, 128);
  auto v = prescribed_velocity_by_id("unit_shrink");
  auto checks = check_evolution_identities(disk, v, 1e-4, 1e-6);
  for (const auto& c : checks) {
    INFO(c.name, " lhs=", c.lhs, " rhs=", c.rhs);
    CHECK(c.pass);
  }
  // dP/dt = -2 pi and d/dt int kappa^2 = -2 pi c / R^2 with c = -1, R = 1
  CHECK(checks[0].lhs == doctest::Approx(-2 * kPi).epsilon(1e-7));
  CHECK(checks[4].lhs == doctest::Approx(2 * kPi).epsilon(1e-6));
}

TEST_CASE("evolution identities: shear field on circle and ellipse") {
  auto v = prescribed_velocity_by_id("shear");
  for (auto bd : {shapes::disk_boundary(1.0, 256), shapes::ellipse_boundary(2.0, 1.0, 256)}) {
    auto checks = check_evolution_identities(bd, v, 1e-4, 1e-4);
    for (const auto& c : checks) {
      INFO(c.name, ": lhs=", c.lhs, " rhs=", c.rhs, " rel=", c.rel_residual);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("evolution identities: curve shortening on the ellipse") {
  auto bd = shapes::ellipse_boundary(2.0, 1.0, 256);
  auto v = prescribed_velocity_by_id("ellipse_csf");
  auto checks = check_evolution_identities(bd, v, 1e-4, 1e-4);
  for (const auto& c : checks) {
    INFO(c.name, ": lhs=", c.lhs, " rhs=", c.rhs, " rel=", c.rel_residual);
    CHECK(c.pass);
  }
}

TEST_CASE("Reilly: linear field exactly zero, (xy,0) gives 2pi") {
  auto disk = shapes::disk_boundary(1.0, 128);
  auto r1 = verify_reilly(disk, vector_field_by_id("linear_xy"), 1.0 / 128, 1e-8);
  CHECK(r1.pass);
  CHECK(std::abs(r1.lhs) < 1e-8);
  CHECK(std::abs(r1.rhs) < 1e-10);

  auto r2 = verify_reilly(disk, vector_field_by_id("xy0"), 1.0 / 256, 1e-4);
  CHECK(r2.pass);
  CHECK(r2.lhs == doctest::Approx(2 * kPi).epsilon(1e-4));
  CHECK(r2.rhs == doctest::Approx(2 * kPi).epsilon(1e-9));
}

TEST_CASE("Reilly on the ellipse self-converges at 2nd order or better") {
  auto ell = shapes::ellipse_boundary(2.0, 1.0, 256);
  auto field = vector_field_by_id("xy0");
  auto coarse = verify_reilly(ell, field, 1.0 / 64, 1.0);
  auto fine = verify_reilly(ell, field, 1.0 / 128, 1.0);
  CHECK(std::abs(fine.lhs - fine.rhs) < std::abs(coarse.lhs - coarse.rhs) / 3.0);
}

TEST_CASE("frame identities on disk and ellipse") {
  for (auto bd : {shapes::disk_boundary(1.0, 128), shapes::ellipse_boundary(2.0, 1.0, 256)}) {
    for (const auto& id : {"quad", "cubic"}) {
      auto checks = verify_frame_identities(bd, vector_field_by_id(id), 6, 1e-6);
      for (const auto& c : checks) {
        INFO(c.name, ": residual=", c.abs_residual);
        CHECK(c.pass);
      }
    }
  }
}

TEST_CASE("cutoff identities and trace equality case on the unit disk") {
  auto disk = shapes::disk_boundary(1.0, 128);
  const ScalarField one = scalar_field_from_poly("one", Poly2::monomial(0, 0));
  auto checks = verify_cutoff_identities(disk, one, 0.01, 2e-3);
  for (const auto& c : checks) {
    INFO(c.name, ": lhs=", c.lhs, " rhs=", c.rhs);
    CHECK(c.pass);
  }
  // trace equality case: int_bnd 1 = 2 pi = (2/r)|Omega|
  CHECK(checks[2].lhs == doctest::Approx(2 * kPi).epsilon(1e-10));
  CHECK(checks[2].rhs == doctest::Approx(2 * kPi).epsilon(2e-3));

  // x1^2 on the ellipse: the two routes of the cutoff identity agree
  auto ell = shapes::ellipse_boundary(2.0, 1.0, 192);
  auto ch2 = verify_cutoff_identities(ell, scalar_field_by_id("x1sq"), 0.005, 5e-3);
  CHECK(ch2[0].pass);
  CHECK(ch2[1].pass);
  CHECK(ch2[3].pass);  // bulk curvature estimate
}

TEST_CASE("report: annulus closed forms at t=0") {
  ScenarioConfig cfg;
  cfg.shape.type = "annulus";
  cfg.nodes = 128;
  SimulationState st;
  st.boundary = cfg.shape.build(cfg.nodes);
  st.solution = solve_stokes(st.boundary, 1.0);
  auto rec = report(st, cfg, nullptr, nullptr, /*deep=*/false);
  CHECK(rec.perimeter == doctest::Approx(6 * kPi).epsilon(1e-10));
  CHECK(rec.area == doctest::Approx(3 * kPi).epsilon(1e-10));
  CHECK(rec.r_ubc == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(rec.k_l2_sq == doctest::Approx(3 * kPi).epsilon(1e-10));
  CHECK(rec.dissipation == doctest::Approx(3 * kPi).epsilon(1e-9));
  CHECK(rec.ubc_alternative == "neck");
}

TEST_CASE("report: disk trivia") {
  ScenarioConfig cfg;
  cfg.shape.type = "circle";
  cfg.nodes = 64;
  SimulationState st;
  st.boundary = cfg.shape.build(cfg.nodes);
  st.solution = solve_stokes(st.boundary, 1.0);
  auto ctx = make_context(st.boundary);
  auto rec = report(st, cfg, &ctx, nullptr, /*deep=*/false);
  CHECK(std::abs(rec.dissipation) < 1e-10);
  CHECK(rec.dk_l2_sq < 1e-12);
  CHECK(rec.r_ubc == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rec.holder_quotient_prev == 0.0);
  CHECK(rec.K0 > 0.0);
}

TEST_CASE("dissipation identity over an annulus run") {
  ScenarioConfig cfg;
  cfg.shape.type = "annulus";
  cfg.nodes = 96;
  cfg.t_end = 0.2;
  cfg.dt_max = 0.005;
  cfg.cfl = 0.5;
  auto traj = run(cfg);
  std::vector<DiagnosticsRecord> recs;
  for (const auto& st : traj.states)
    recs.push_back(report(st, cfg, nullptr, nullptr, /*deep=*/false));
  auto checks = check_dissipation_identity(recs, cfg.theta, 1e-3, 1e-3);
  for (const auto& c : checks) {
    INFO(c.name, " residual=", c.rel_residual);
    CHECK(c.pass);
  }
}

TEST_CASE("windowed curvature average bound holds on the ellipse") {
  auto ell = shapes::ellipse_boundary(2.0, 1.0, 128);
  auto checks = check_windowed_average(ell, 0.2, 16);
  CHECK(!checks.empty());
  for (const auto& c : checks) CHECK(c.pass);
}

TEST_CASE("gronwall monitor on a short annulus trajectory") {
  ScenarioConfig cfg;
  cfg.shape.type = "annulus";
  cfg.nodes = 64;
  cfg.t_end = 0.1;
  cfg.dt_max = 0.02;
  auto traj = run(cfg);
  REQUIRE(traj.states.size() >= 3);
  const double c_cal = calibrate_growth_constant(traj, cfg.theta);
  auto mon = holder_and_gronwall_monitor(traj, cfg.theta, c_cal, true);
  CHECK(mon.envelope_contained);
  CHECK(mon.K0_condition_held);
  CHECK(mon.holder_sup >= 0.0);
  CHECK(std::isfinite(mon.holder_sup));
  for (const auto& c : mon.window_checks) CHECK(c.pass);
  // annulus r_t follows min(l, (L-l)/2)
  const AnnulusOracle oracle(1.0, 2.0, 1.0);
  for (std::size_t i = 0; i < mon.t_trace.size(); ++i)
    CHECK(mon.r_trace[i] == doctest::Approx(oracle.at(mon.t_trace[i]).r_ubc).epsilon(5e-3));
}
