// dropflow: quasi-steady Stokes droplet simulator and verification suites.
//
// Subcommands:
//   simulate -c <cfg.json> -o <dir>      run a scenario, write artifacts
//   oracle annulus --l --L --theta --t   closed-form annulus state
//   verify --suite <name> [--level n]    identity / inequality suites
//   ubc -i <curve.csv>                   maximal UBC radius analysis
//   export-svg -i <snapshot.csv>         deterministic SVG rendering
//
// Exit codes: 0 ok, 1 config error, 2 solver failure, 3 degeneration,
// 4 check failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "dropflow/annulus_oracle.hpp"
#include "dropflow/diagnostics.hpp"
#include "dropflow/evolve.hpp"
#include "dropflow/inequalities.hpp"
#include "dropflow/io.hpp"
#include "dropflow/shapes.hpp"
#include "dropflow/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dropflow;

namespace {

int cmd_simulate(const std::string& cfg_path, const std::string& out_dir) {
  ScenarioConfig cfg;
  try {
    cfg = io::read_config(cfg_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  fs::create_directories(out_dir);
  fs::create_directories(fs::path(out_dir) / "snapshots");
  {
    std::ofstream echo(fs::path(out_dir) / "config.json");
    echo << io::config_to_json(cfg).dump(2) << "\n";
  }

  Trajectory traj;
  try {
    traj = run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  }
  if (traj.stop == StopReason::SolverFailure) {
    std::cerr << "solver failure: " << traj.failure_message << "\n";
    return 2;
  }

  const MonitorContext ctx = make_context(traj.states.front().boundary,
                                          cfg.growth_calibration, false);
  std::ofstream records(fs::path(out_dir) / "records.jsonl");
  DiagnosticsRecord prev;
  bool has_prev = false;
  std::vector<DiagnosticsRecord> recs;
  for (const auto& st : traj.states) {
    const DiagnosticsRecord rec =
        report(st, cfg, &ctx, has_prev ? &prev : nullptr, /*deep=*/false);
    records << io::record_to_json(rec).dump() << "\n";
    recs.push_back(rec);
    prev = rec;
    has_prev = true;

    char name[64];
    std::snprintf(name, sizeof(name), "curve_%06d.csv", st.step_index);
    const BoundaryField kap = curvature(st.boundary);
    if (st.solution) {
      io::write_snapshot_csv(fs::path(out_dir) / "snapshots" / name, st.boundary, &kap,
                             &st.solution->normal_velocity);
    } else {
      io::write_snapshot_csv(fs::path(out_dir) / "snapshots" / name, st.boundary, &kap,
                             nullptr);
    }
  }

  json summary;
  summary["stop_reason"] = to_string(traj.stop);
  summary["steps"] = traj.states.back().step_index;
  summary["t_final"] = traj.states.back().t;
  summary["final"] = io::record_to_json(recs.back());
  const double area_drift =
      std::abs(recs.back().area - recs.front().area) / recs.front().area;
  summary["area_drift_rel"] = area_drift;
  bool monotone = true;
  for (std::size_t i = 1; i < recs.size(); ++i)
    if (recs[i].perimeter > recs[i - 1].perimeter + 1e-9) monotone = false;
  summary["acceptance"] = {{"area_conserved", area_drift <= cfg.area_tol},
                           {"perimeter_monotone", monotone}};
  if (cfg.shape.type == "annulus" && traj.states.back().boundary.components.size() == 2) {
    // collapse-time extrapolation from the measured final state via the
    // closed-form remaining time 2 sqrt(A/pi) - 2 b(l)
    const auto& inner = traj.states.back().boundary.components[1];
    const double cx = inner.nodes.col(0).mean(), cy = inner.nodes.col(1).mean();
    double l = 0;
    for (int i = 0; i < inner.size(); ++i)
      l += std::hypot(inner.nodes(i, 0) - cx, inner.nodes(i, 1) - cy);
    l /= inner.size();
    const double aop = recs.back().area / std::numbers::pi;
    const double b = std::sqrt(aop + l * l) - l;
    summary["collapse_time_extrapolated"] =
        traj.states.back().t + cfg.theta * (2.0 * std::sqrt(aop) - 2.0 * b);
  }
  std::ofstream sum(fs::path(out_dir) / "summary.json");
  sum << summary.dump(2) << "\n";
  std::cout << "stop: " << to_string(traj.stop) << " at t=" << traj.states.back().t
            << " (" << traj.states.back().step_index << " steps)\n";
  if (traj.stop == StopReason::SelfIntersection || traj.stop == StopReason::ResolutionFloor)
    return 3;
  return 0;
}

int cmd_oracle(double l0, double L0, double theta, double t) {
  try {
    const AnnulusOracle oracle(l0, L0, theta);
    const auto st = oracle.at(t);
    json j{{"t", t},
           {"l", st.inner},
           {"L", st.outer},
           {"lambda", st.lambda},
           {"p", st.pressure},
           {"v_inner", st.v_inner},
           {"v_outer", st.v_outer},
           {"perimeter", st.perimeter},
           {"area", st.area},
           {"r_ubc", st.r_ubc},
           {"k_l2_sq", st.k_l2_sq},
           {"dissipation", st.dissipation},
           {"collapse_time", oracle.collapse_time()}};
    std::cout << j.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return 1;
  }
}

void print_checks(const std::vector<IdentityCheckResult>& checks, json& arr,
                  bool& all_pass) {
  for (const auto& c : checks) {
    arr.push_back(io::check_to_json(c));
    all_pass = all_pass && c.pass;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": lhs=" << c.lhs
              << " rhs=" << c.rhs << " rel=" << c.rel_residual << "\n";
  }
}

int cmd_verify(const std::string& suite, int level, const std::string& out_path) {
  const int n = 128 << std::max(0, level - 1);
  json results = json::array();
  bool all_pass = true;

  const auto run_reilly = [&] {
    auto disk = shapes::disk_boundary(1.0, n);
    auto ell = shapes::ellipse_boundary(2.0, 1.0, n);
    std::vector<IdentityCheckResult> cs;
    cs.push_back(verify_reilly(disk, vector_field_by_id("linear_xy"), 1.0 / 128, 1e-8));
    cs.push_back(verify_reilly(disk, vector_field_by_id("xy0"), 1.0 / 256, 1e-4));
    cs.push_back(verify_reilly(ell, vector_field_by_id("xy0"), 1.0 / 128, 1e-3));
    cs.push_back(verify_reilly(ell, vector_field_by_id("quad"), 1.0 / 128, 1e-3));
    print_checks(cs, results, all_pass);
  };
  const auto run_frame = [&] {
    for (const auto& bd :
         {shapes::disk_boundary(1.0, n), shapes::ellipse_boundary(2.0, 1.0, n)}) {
      for (const char* f : {"quad", "cubic"})
        print_checks(verify_frame_identities(bd, vector_field_by_id(f), 6, 1e-6), results,
                     all_pass);
      print_checks(verify_cutoff_identities(bd, scalar_field_by_id("x1sq"), 0.01, 5e-3),
                   results, all_pass);
    }
  };
  const auto run_evolution = [&] {
    auto disk = shapes::disk_boundary(1.0, 256);
    auto ell = shapes::ellipse_boundary(2.0, 1.0, 256);
    print_checks(check_evolution_identities(disk, prescribed_velocity_by_id("unit_shrink"),
                                            1e-4, 1e-4),
                 results, all_pass);
    print_checks(
        check_evolution_identities(disk, prescribed_velocity_by_id("shear"), 1e-4, 1e-4),
        results, all_pass);
    print_checks(
        check_evolution_identities(ell, prescribed_velocity_by_id("shear"), 1e-4, 1e-4),
        results, all_pass);
    print_checks(check_evolution_identities(ell, prescribed_velocity_by_id("ellipse_csf"),
                                            1e-4, 1e-4),
                 results, all_pass);
  };
  const auto run_dissipation = [&] {
    ScenarioConfig cfg;
    cfg.shape.type = "annulus";
    cfg.nodes = std::max(96, n / 2);
    cfg.t_end = 0.3;
    cfg.dt_max = 0.005;
    auto traj = run(cfg);
    std::vector<DiagnosticsRecord> recs;
    for (const auto& st : traj.states) recs.push_back(report(st, cfg, nullptr, nullptr, false));
    print_checks(check_dissipation_identity(recs, cfg.theta, 1e-3, 1e-3), results, all_pass);
  };
  const auto run_inequalities = [&] {
    auto rows = inequality_table(standard_inequality_domains(n), 2);
    std::cout << "domain            inequality          field            ratio\n";
    for (const auto& r : rows) {
      results.push_back(io::row_to_json(r));
      std::printf("%-17s %-19s %-16s %.6g\n", r.domain.c_str(), r.inequality.c_str(),
                  r.field.c_str(), r.ratio);
    }
  };

  if (suite == "reilly")
    run_reilly();
  else if (suite == "frame")
    run_frame();
  else if (suite == "evolution")
    run_evolution();
  else if (suite == "dissipation")
    run_dissipation();
  else if (suite == "inequalities")
    run_inequalities();
  else if (suite == "all") {
    run_reilly();
    run_frame();
    run_evolution();
    run_dissipation();
    run_inequalities();
  } else {
    std::cerr << "unknown suite: " << suite << "\n";
    return 1;
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << results.dump(2) << "\n";
  }
  return all_pass ? 0 : 4;
}

int cmd_ubc(const std::string& in_path, const std::string& out_path) {
  Boundary bd;
  try {
    bd = io::read_curve_csv(in_path);
    bd.validate();
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  const DomainGeometry g = ubc_radius(bd);
  json j{{"r_omega", g.r_omega},
         {"kappa_max", g.kappa_max},
         {"active_alternative",
          g.degenerate ? "unresolved" : (g.curvature_limited ? "curvature" : "neck")},
         {"resolution_floor", g.resolution_floor}};
  if (g.neck) {
    j["neck_pair"] = {{"x", {g.neck->x.x(), g.neck->x.y()}},
                      {"y", {g.neck->y.x(), g.neck->y.y()}},
                      {"separation", g.neck->separation}};
  }
  const std::string text = j.dump(2);
  if (out_path.empty())
    std::cout << text << "\n";
  else {
    std::ofstream out(out_path);
    out << text << "\n";
  }
  return 0;
}

int cmd_export_svg(const std::string& in_path, const std::string& out_path, bool normals,
                   bool show_ubc) {
  Boundary bd;
  try {
    bd = io::read_curve_csv(in_path);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  svg::SvgOptions opts;
  opts.draw_normals = normals;
  opts.draw_ubc_disk = show_ubc;
  const std::string out =
      out_path.empty() ? (in_path.substr(0, in_path.find_last_of('.')) + ".svg") : out_path;
  svg::export_svg(out, bd, opts);
  std::cout << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D quasi-steady Stokes droplet simulator"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run a scenario from a JSON config");
  std::string cfg_path, out_dir = "run";
  sim->add_option("-c,--config", cfg_path, "scenario config JSON")->required();
  sim->add_option("-o,--out", out_dir, "output directory");

  auto* orc = app.add_subcommand("oracle", "closed-form reference states");
  auto* ann = orc->add_subcommand("annulus", "annulus evolution closed form");
  double l0 = 1.0, L0 = 2.0, theta = 1.0, t = 0.0;
  ann->add_option("--l", l0, "initial inner radius");
  ann->add_option("--L", L0, "initial outer radius");
  ann->add_option("--theta", theta, "viscosity");
  ann->add_option("--t", t, "time");

  auto* ver = app.add_subcommand("verify", "identity and inequality suites");
  std::string suite = "all", ver_out;
  int level = 1;
  ver->add_option("--suite", suite, "reilly|frame|inequalities|evolution|dissipation|all");
  ver->add_option("--level", level, "resolution level (1 = default)");
  ver->add_option("-o,--out", ver_out, "write JSON results here");

  auto* ubc = app.add_subcommand("ubc", "maximal UBC radius of a curve file");
  std::string ubc_in, ubc_out;
  ubc->add_option("-i,--input", ubc_in, "curve CSV")->required();
  ubc->add_option("-o,--out", ubc_out, "write JSON here (default stdout)");

  auto* esvg = app.add_subcommand("export-svg", "render a snapshot CSV");
  std::string svg_in, svg_out;
  bool normals = false, show_ubc = false;
  esvg->add_option("-i,--input", svg_in, "snapshot CSV")->required();
  esvg->add_option("-o,--out", svg_out, "output SVG path");
  esvg->add_flag("--normals", normals, "draw normals");
  esvg->add_flag("--show-ubc", show_ubc, "draw the UBC disk");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(cfg_path, out_dir);
    if (orc->parsed()) {
      if (!ann->parsed()) {
        std::cerr << "oracle: unknown shape (only 'annulus')\n";
        return 1;
      }
      return cmd_oracle(l0, L0, theta, t);
    }
    if (ver->parsed()) return cmd_verify(suite, level, ver_out);
    if (ubc->parsed()) return cmd_ubc(ubc_in, ubc_out);
    if (esvg->parsed()) return cmd_export_svg(svg_in, svg_out, normals, show_ubc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
