// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run on desk-scale resolutions; every tolerance is pinned
// here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "dropflow/annulus_oracle.hpp"
#include "dropflow/diagnostics.hpp"
#include "dropflow/evolve.hpp"
#include "dropflow/geometry.hpp"
#include "dropflow/inequalities.hpp"
#include "dropflow/shapes.hpp"
#include "dropflow/stokes.hpp"

using namespace dropflow;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void outcome(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

double mean_radius(const ClosedCurve& c) {
  const double cx = c.nodes.col(0).mean(), cy = c.nodes.col(1).mean();
  double acc = 0;
  for (int i = 0; i < c.size(); ++i)
    acc += std::hypot(c.nodes(i, 0) - cx, c.nodes(i, 1) - cy);
  return acc / c.size();
}

double max_abs_field(const BoundaryField& f) {
  double m = 0;
  for (const auto& c : f.comp) m = std::max(m, c.abs().maxCoeff());
  return m;
}

// Brute-force tangent-ball emptiness oracle at `samples` boundary points.
double ball_oracle(const Boundary& bd, int samples) {
  std::vector<Vec2> pts, nus;
  for (const auto& c : bd.components) {
    const CurveFrame f = curve_frame(c);
    for (int i = 0; i < c.size(); ++i) {
      pts.push_back(c.node(i));
      nus.emplace_back(f.nu(i, 0), f.nu(i, 1));
    }
  }
  const int total = static_cast<int>(pts.size());
  auto empty_for = [&](double rho) {
    for (int s = 0; s < samples; ++s) {
      const int i = (s * total) / samples;
      for (int j = 0; j < total; ++j) {
        if (j == i) continue;
        if ((pts[j] - (pts[i] - rho * nus[i])).norm() < rho - 1e-9) return false;
        if ((pts[j] - (pts[i] + rho * nus[i])).norm() < rho - 1e-9) return false;
      }
    }
    return true;
  };
  double lo = 0, hi = 10;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    (empty_for(mid) ? lo : hi) = mid;
  }
  return lo;
}

// ---- criteria ------------------------------------------------------------

std::vector<DiagnosticsRecord> g_annulus_records;
Trajectory g_annulus_traj;

void criterion_1_disk_equilibrium() {
  auto disk = shapes::disk_boundary(1.0, 128);
  auto sol = solve_stokes(disk, 1.0);
  const double vmax = max_abs_field(sol.normal_velocity);
  double perr = 0;
  for (const auto& c : sol.pressure_trace.comp)
    perr = std::max(perr, (c.col(0) - 1.0).abs().maxCoeff());

  ScenarioConfig cfg;
  cfg.shape.type = "circle";
  cfg.nodes = 128;
  cfg.dt_max = 0.01;
  cfg.t_end = 1.0;
  SimulationState st;
  st.boundary = disk;
  st.solution = sol;
  const double P0 = perimeter_area(disk).perimeter;
  for (int i = 0; i < 100; ++i) st = step(st, cfg, 0.01);
  const double drift = std::abs(perimeter_area(st.boundary).perimeter - P0) / P0;

  outcome(1, vmax <= 1e-8 && perr <= 1e-6 && drift <= 1e-6, "disk equilibrium",
          "max|v|=" + fmt(vmax) + ", |p-1|=" + fmt(perr) + ", P drift=" + fmt(drift));
}

void criterion_2_annulus_solve() {
  auto ann = shapes::annulus_boundary(1.0, 2.0, 256);
  auto sol = solve_stokes(ann, 1.0);
  double uerr = 0, perr = 0;
  for (std::size_t k = 0; k < ann.components.size(); ++k) {
    const auto& c = ann.components[k];
    for (int i = 0; i < c.size(); ++i) {
      const Vec2 x = c.node(i);
      const Vec2 ue = -x / x.squaredNorm();
      uerr = std::max(uerr, std::abs(sol.boundary_velocity.comp[k](i, 0) - ue.x()));
      uerr = std::max(uerr, std::abs(sol.boundary_velocity.comp[k](i, 1) - ue.y()));
    }
    perr = std::max(perr, (sol.pressure_trace.comp[k].col(0) - 1.0).abs().maxCoeff());
  }
  outcome(2, uerr <= 1e-4 && perr <= 1e-4, "annulus solve oracle",
          "max|u-u*|=" + fmt(uerr) + ", |p-1|=" + fmt(perr));
}

void criterion_3_annulus_trajectory() {
  ScenarioConfig cfg;
  cfg.shape.type = "annulus";
  cfg.nodes = 256;
  cfg.t_end = 1.17;
  cfg.dt_max = 0.02;
  cfg.cfl = 0.5;
  g_annulus_traj = run(cfg);
  const AnnulusOracle oracle(1.0, 2.0, 1.0);
  double lerr = 0, Lerr = 0;
  for (const auto& st : g_annulus_traj.states) {
    const auto ref = oracle.at(st.t);
    lerr = std::max(lerr,
                    std::abs(mean_radius(st.boundary.components[1]) - ref.inner) / ref.inner);
    Lerr = std::max(Lerr,
                    std::abs(mean_radius(st.boundary.components[0]) - ref.outer) / ref.outer);
  }
  // collapse-time extrapolation from the measured final state
  const auto& last = g_annulus_traj.states.back();
  const double l = mean_radius(last.boundary.components[1]);
  const double aop = perimeter_area(last.boundary).area / kPi;
  const double textr = last.t + 2.0 * std::sqrt(aop) - 2.0 * (std::sqrt(aop + l * l) - l);
  const double t0 = 2.0 * std::sqrt(3.0) - 2.0;
  const double t0err = std::abs(textr - t0) / t0;

  DiagnosticsRecord prev;
  bool has_prev = false;
  g_annulus_records.clear();
  for (const auto& st : g_annulus_traj.states) {
    g_annulus_records.push_back(report(st, cfg, nullptr, has_prev ? &prev : nullptr, false));
    prev = g_annulus_records.back();
    has_prev = true;
  }
  outcome(3,
          g_annulus_traj.stop == StopReason::TimeEnd && lerr <= 1e-2 && Lerr <= 1e-2 &&
              t0err <= 0.02,
          "annulus trajectory oracle",
          "max rel err l=" + fmt(lerr) + ", L=" + fmt(Lerr) + ", t0 err=" + fmt(t0err));
}

void criterion_4_dissipation_identity() {
  auto checks = check_dissipation_identity(g_annulus_records, 1.0, 1e-3, 1e-3);
  const bool interval_ok = checks[0].pass;
  // both dissipation routes at t = 0
  auto ann = shapes::annulus_boundary(1.0, 2.0, 256);
  auto sol = solve_stokes(ann, 1.0);
  const auto d = dissipation(sol, ann, /*cross_check=*/true, 0.01);
  const double b_err = std::abs(d.boundary_route - 3 * kPi) / (3 * kPi);
  const double i_err = std::abs(d.interior_route - 3 * kPi) / (3 * kPi);
  outcome(4, interval_ok && b_err <= 0.01 && i_err <= 0.01, "dissipation identity",
          "worst interval=" + fmt(checks[0].lhs) + ", route errs " + fmt(b_err) + "/" +
              fmt(i_err));
}

Trajectory g_ellipse_traj;

void criterion_5_area_conservation() {
  // disk (from criterion 1 setup), annulus (criterion 3 run), ellipse run
  ScenarioConfig cfg;
  cfg.shape.type = "ellipse";
  cfg.nodes = 128;
  cfg.t_end = 2.0;
  cfg.dt_max = 0.02;
  cfg.cfl = 0.5;
  g_ellipse_traj = run(cfg);
  double worst = 0;
  const double Ae = perimeter_area(g_ellipse_traj.states.front().boundary).area;
  for (const auto& st : g_ellipse_traj.states)
    worst = std::max(worst, std::abs(perimeter_area(st.boundary).area - Ae) / Ae);
  const double A0 = g_annulus_records.front().area;
  for (const auto& rec : g_annulus_records)
    worst = std::max(worst, std::abs(rec.area - A0) / A0);
  outcome(5, worst <= 1e-4, "area conservation", "worst rel drift=" + fmt(worst));
}

void criterion_6_ubc_radius() {
  auto disk = shapes::disk_boundary(1.0, 128);
  const auto gd = ubc_radius(disk);
  const bool disk_ok = std::abs(gd.r_omega - 1.0) <= 1e-12;

  auto ann = shapes::annulus_boundary(1.0, 2.0, 128);
  const auto ga = ubc_radius(ann);
  const bool ann_ok = std::abs(ga.r_omega - 0.5) <= 1e-3 && !ga.curvature_limited;
  const double oracle_a = ball_oracle(ann, 64);

  auto ell = shapes::ellipse_boundary(2.0, 1.0, 256);
  const auto ge = ubc_radius(ell);
  const bool ell_ok = std::abs(ge.r_omega - 0.5) <= 1e-3 && ge.curvature_limited;
  const double oracle_e = ball_oracle(ell, 64);

  const bool oracle_ok =
      std::abs(ga.r_omega - oracle_a) <= 2e-3 && std::abs(ge.r_omega - oracle_e) <= 2e-3;
  outcome(6, disk_ok && ann_ok && ell_ok && oracle_ok, "UBC radius",
          "disk err=" + fmt(std::abs(gd.r_omega - 1.0)) + ", annulus=" + fmt(ga.r_omega) +
              " (oracle " + fmt(oracle_a) + "), ellipse=" + fmt(ge.r_omega) + " (oracle " +
              fmt(oracle_e) + ")");
}

void criterion_7_reilly() {
  auto disk = shapes::disk_boundary(1.0, 256);
  auto r1 = verify_reilly(disk, vector_field_by_id("linear_xy"), 1.0 / 256, 1e-8);
  auto r2 = verify_reilly(disk, vector_field_by_id("xy0"), 1.0 / 256, 1e-4);
  // self-convergence order on the ellipse under grid refinement
  auto ell = shapes::ellipse_boundary(2.0, 1.0, 256);
  auto field = vector_field_by_id("xy0");
  const double e1 = verify_reilly(ell, field, 1.0 / 64, 1).abs_residual;
  const double e2 = verify_reilly(ell, field, 1.0 / 128, 1).abs_residual;
  const double e3 = verify_reilly(ell, field, 1.0 / 256, 1).abs_residual;
  const double order = 0.5 * (std::log2(e1 / e2) + std::log2(e2 / e3));
  outcome(7, r1.abs_residual <= 1e-8 && r2.abs_residual <= 1e-4 && order >= 2.0,
          "Reilly's formula",
          "disk residuals " + fmt(r1.abs_residual) + "/" + fmt(r2.abs_residual) +
              ", ellipse order=" + fmt(order));
}

void criterion_8_evolution_identities() {
  // residuals normalized by max(1, |lhs|, |rhs|): identities whose both
  // sides vanish are judged on the absolute scale of the functionals
  double worst = 0;
  auto collect = [&](const std::vector<IdentityCheckResult>& cs) {
    for (const auto& c : cs)
      worst = std::max(worst,
                       c.abs_residual / std::max({1.0, std::abs(c.lhs), std::abs(c.rhs)}));
  };
  auto disk = shapes::disk_boundary(1.0, 256);
  auto ell = shapes::ellipse_boundary(2.0, 1.0, 256);
  collect(check_evolution_identities(disk, prescribed_velocity_by_id("unit_shrink"), 1e-4, 1e-4));
  collect(check_evolution_identities(disk, prescribed_velocity_by_id("shear"), 1e-4, 1e-4));
  collect(check_evolution_identities(ell, prescribed_velocity_by_id("shear"), 1e-4, 1e-4));
  collect(check_evolution_identities(ell, prescribed_velocity_by_id("ellipse_csf"), 1e-4, 1e-4));
  outcome(8, worst <= 1e-4, "evolution identities (Appendix set)",
          "worst rel residual=" + fmt(worst));
}

void criterion_9_frame_identities() {
  double worst = 0;
  for (const auto& bd :
       {shapes::disk_boundary(1.0, 128), shapes::ellipse_boundary(2.0, 1.0, 256)}) {
    for (const char* f : {"quad", "cubic"}) {
      auto cs = verify_frame_identities(bd, vector_field_by_id(f), 6, 1e-6);
      for (const auto& c : cs) worst = std::max(worst, c.abs_residual);
    }
  }
  // trace equality case f == 1 on the unit disk: P = (2/r)|Omega| exactly
  auto disk = shapes::disk_boundary(1.0, 128);
  const auto pa = perimeter_area(disk);
  const double r = ubc_radius(disk).r_omega;
  const double eq_gap = std::abs(pa.perimeter - 2.0 * pa.area / r);
  outcome(9, worst <= 1e-6 && eq_gap <= 1e-9, "frame identities",
          "worst pointwise residual=" + fmt(worst) + ", trace equality gap=" + fmt(eq_gap));
}

void criterion_10_inequality_table() {
  auto domains = standard_inequality_domains(192);
  auto rows = inequality_table(domains, 2);
  auto rows_scaled = inequality_table(domains, 2, 12.0, 2.5);
  bool lambda_ok = rows.size() == rows_scaled.size();
  double worst_gap = 0;
  for (std::size_t i = 0; lambda_ok && i < rows.size(); ++i) {
    const double gap = std::abs(rows_scaled[i].ratio - rows[i].ratio) /
                       std::max(1e-300, std::abs(rows[i].ratio));
    worst_gap = std::max(worst_gap, gap);
    if (gap > 1e-12) lambda_ok = false;
  }
  // table covers all inequalities over the whole family
  int n_poincare = 0, n_gn = 0, n_korn = 0, n_kp = 0, n_ir = 0;
  for (const auto& r : rows) {
    n_poincare += r.inequality == "poincare";
    n_gn += r.inequality.rfind("gn", 0) == 0;
    n_korn += r.inequality == "korn" || r.inequality == "korn_cutoff";
    n_kp += r.inequality.rfind("korn_poincare", 0) == 0;
    n_ir += r.inequality == "interior_reg";
  }
  const bool coverage = n_poincare >= 6 && n_gn >= 12 && n_korn >= 12 && n_kp >= 12 && n_ir >= 6;

  // dumbbell Poincare growth with the neck-transition witness field
  auto ratio_of = [&](const std::string& domain) {
    for (const auto& r : rows)
      if (r.domain == domain && r.inequality == "poincare" && r.field == "tanh_neck")
        return r.ratio;
    return 0.0;
  };
  const double growth = ratio_of("dumbbell_w0.025") / ratio_of("dumbbell_w0.200");
  outcome(10, lambda_ok && coverage && growth >= 4.0, "quantified inequality table",
          "rows=" + std::to_string(rows.size()) + ", worst lambda gap=" + fmt(worst_gap) +
              ", dumbbell growth=" + fmt(growth));
}

void criterion_11_holder_gronwall() {
  // annulus: measured r_t vs min(l, (L-l)/2); Holder table finite
  const AnnulusOracle oracle(1.0, 2.0, 1.0);
  double r_err = 0;
  for (const auto& rec : g_annulus_records)
    r_err = std::max(r_err, std::abs(rec.r_ubc - oracle.at(rec.t).r_ubc));
  const double c_ann = calibrate_growth_constant(g_annulus_traj, 1.0);
  auto mon_ann = holder_and_gronwall_monitor(g_annulus_traj, 1.0, c_ann, true);
  const bool ann_ok = r_err <= 1e-3 && std::isfinite(mon_ann.holder_sup);

  // perturbed circle: dk^2 decays below 1e-6; envelope contains the run
  ScenarioConfig cfg;
  cfg.shape.type = "perturbed_circle";
  cfg.shape.radius = 1.0;
  cfg.shape.fourier_modes = {0.0, 0.0, 0.05};
  cfg.nodes = 256;
  cfg.t_end = 6.0;
  cfg.dt_max = 0.02;
  cfg.cfl = 0.5;
  cfg.record_every = 10;
  auto traj = run(cfg);
  const double c_cal = calibrate_growth_constant(traj, cfg.theta);
  auto mon = holder_and_gronwall_monitor(traj, cfg.theta, c_cal, true);
  bool window_ok = true;
  for (const auto& w : mon.window_checks) window_ok = window_ok && w.pass;
  outcome(11,
          ann_ok && mon.final_dk_sq <= 1e-6 && mon.envelope_contained &&
              mon_ann.envelope_contained && window_ok,
          "Holder/Gronwall monitors",
          "annulus r err=" + fmt(r_err) + ", holder sup=" + fmt(mon_ann.holder_sup) +
              ", final dk^2=" + fmt(mon.final_dk_sq) + ", C_cal=" + fmt(c_cal));
}

void criterion_12_convergence_order() {
  const AnnulusOracle oracle(1.0, 2.0, 1.0);
  auto run_fixed = [&](int n, double dt) {
    ScenarioConfig cfg;
    cfg.shape.type = "annulus";
    cfg.nodes = n;
    cfg.t_end = 0.5;
    cfg.dt_max = dt;
    SimulationState st;
    st.boundary = cfg.shape.build(n);
    st.solution = solve_stokes(st.boundary, 1.0);
    const int steps = static_cast<int>(std::round(0.5 / dt));
    for (int i = 0; i < steps; ++i) st = step(st, cfg, dt);
    return std::pair<double, double>(mean_radius(st.boundary.components[1]),
                                     mean_radius(st.boundary.components[0]));
  };
  // dt-order at fixed N via Richardson differences (dt ladder within the
  // tension-stability limit of the explicit midpoint scheme)
  const auto a1 = run_fixed(256, 0.005);
  const auto a2 = run_fixed(256, 0.0025);
  const auto a3 = run_fixed(256, 0.00125);
  const double dt_order =
      std::log2(std::abs(a1.first - a2.first) / std::abs(a2.first - a3.first));
  // N-order at fixed dt (same dt cancels the time error in differences)
  const auto b1 = run_fixed(128, 0.0025);
  const auto b2 = run_fixed(256, 0.0025);
  const auto b3 = run_fixed(512, 0.0025);
  const double d12 = std::abs(b1.first - b2.first);
  const double d23 = std::abs(b2.first - b3.first);
  const double n_order = (d23 < 1e-12) ? 99.0 : std::log2(d12 / d23);
  const double lerr = std::abs(a3.first - oracle.at(0.5).inner);
  std::printf("    dt study: %.10f %.10f %.10f | N study: %.10f %.10f %.10f\n",
              a1.first, a2.first, a3.first, b1.first, b2.first, b3.first);
  outcome(12, dt_order >= 1.8 && n_order >= 2.0 && lerr < 1e-3, "convergence order",
          "dt order=" + fmt(dt_order) + ", N order=" + fmt(n_order) +
              ", l err @ finest=" + fmt(lerr));
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  criterion_1_disk_equilibrium();
  criterion_2_annulus_solve();
  criterion_3_annulus_trajectory();
  criterion_4_dissipation_identity();
  criterion_5_area_conservation();
  criterion_6_ubc_radius();
  criterion_7_reilly();
  criterion_8_evolution_identities();
  criterion_9_frame_identities();
  criterion_10_inequality_table();
  criterion_11_holder_gronwall();
  criterion_12_convergence_order();
  const double secs = std::chrono::duration<double>(clock::now() - t0).count();
  std::printf("%s (%d/12 criteria, %.1f s)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              12 - g_failures, secs);
  return g_failures > 0 ? 1 : 0;
}
