#include "dropflow/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dropflow::io {

using nlohmann::json;

Boundary read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve file: " + path.string());
  std::string line;
  std::vector<std::vector<Vec2>> blocks(1);
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    if (!header_seen && line.rfind("x", 0) == 0) {
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string sx, sy;
    std::getline(ss, sx, ',');
    std::getline(ss, sy, ',');
    blocks.back().emplace_back(std::stod(sx), std::stod(sy));
  }
  while (!blocks.empty() && blocks.back().empty()) blocks.pop_back();
  if (blocks.empty()) throw std::runtime_error("curve file has no nodes: " + path.string());

  Boundary bd;
  for (const auto& blk : blocks) {
    ClosedCurve c;
    c.nodes.resize(static_cast<int>(blk.size()), 2);
    for (std::size_t i = 0; i < blk.size(); ++i) {
      c.nodes(static_cast<int>(i), 0) = blk[i].x();
      c.nodes(static_cast<int>(i), 1) = blk[i].y();
    }
    bd.components.push_back(std::move(c));
  }
  // first component outer; infer hole flags by containment and fix the
  // stored orientation to the convention (outer CCW, holes CW)
  auto signed_area = [](const ClosedCurve& c) {
    double a = 0;
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      a += c.nodes(i, 0) * c.nodes(j, 1) - c.nodes(j, 0) * c.nodes(i, 1);
    }
    return 0.5 * a;
  };
  auto reverse_nodes = [](ClosedCurve& c) {
    c.nodes.col(0) = c.nodes.col(0).reverse().eval();
    c.nodes.col(1) = c.nodes.col(1).reverse().eval();
  };
  for (std::size_t k = 0; k < bd.components.size(); ++k) {
    auto& c = bd.components[k];
    c.is_hole = k > 0 && point_in_polygon(bd.components[0], c.node(0));
    const double a = signed_area(c);
    if (!c.is_hole && a < 0) reverse_nodes(c);
    if (c.is_hole && a > 0) reverse_nodes(c);
  }
  return bd;
}

void write_curve_csv(const std::filesystem::path& path, const Boundary& boundary) {
  write_snapshot_csv(path, boundary, nullptr, nullptr);
}

void write_snapshot_csv(const std::filesystem::path& path, const Boundary& boundary,
                        const BoundaryField* kappa, const BoundaryField* v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write curve file: " + path.string());
  out.precision(17);
  out << "x,y";
  if (kappa) out << ",kappa";
  if (v) out << ",v";
  out << "\n";
  for (std::size_t k = 0; k < boundary.components.size(); ++k) {
    if (k > 0) out << "\n";
    const auto& c = boundary.components[k];
    for (int i = 0; i < c.size(); ++i) {
      out << c.nodes(i, 0) << "," << c.nodes(i, 1);
      if (kappa) out << "," << kappa->comp[k](i, 0);
      if (v) out << "," << v->comp[k](i, 0);
      out << "\n";
    }
  }
}

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig cfg;
  const auto& sh = j.at("shape");
  cfg.shape.type = sh.at("type").get<std::string>();
  cfg.shape.radius = sh.value("radius", cfg.shape.radius);
  cfg.shape.a = sh.value("a", cfg.shape.a);
  cfg.shape.b = sh.value("b", cfg.shape.b);
  cfg.shape.inner = sh.value("inner", cfg.shape.inner);
  cfg.shape.outer = sh.value("outer", cfg.shape.outer);
  cfg.shape.neck = sh.value("neck", cfg.shape.neck);
  if (sh.contains("fourier_modes"))
    cfg.shape.fourier_modes = sh.at("fourier_modes").get<std::vector<double>>();
  cfg.theta = j.value("theta", cfg.theta);
  cfg.nodes = j.value("nodes", cfg.nodes);
  cfg.t_end = j.value("t_end", cfg.t_end);
  cfg.dt_max = j.value("dt_max", cfg.dt_max);
  cfg.cfl = j.value("cfl", cfg.cfl);
  cfg.r_min = j.value("r_min", cfg.r_min);
  cfg.solver_tol = j.value("solver_tol", cfg.solver_tol);
  cfg.velocity_source = j.value("velocity_source", cfg.velocity_source);
  cfg.record_every = j.value("record_every", cfg.record_every);
  cfg.resample_ratio = j.value("resample_ratio", cfg.resample_ratio);
  cfg.area_tol = j.value("area_tol", cfg.area_tol);
  cfg.growth_calibration = j.value("growth_calibration", cfg.growth_calibration);
  cfg.validate();
  return cfg;
}

json config_to_json(const ScenarioConfig& cfg) {
  json sh{{"type", cfg.shape.type}};
  if (cfg.shape.type == "circle" || cfg.shape.type == "perturbed_circle")
    sh["radius"] = cfg.shape.radius;
  if (cfg.shape.type == "ellipse") {
    sh["a"] = cfg.shape.a;
    sh["b"] = cfg.shape.b;
  }
  if (cfg.shape.type == "annulus") {
    sh["inner"] = cfg.shape.inner;
    sh["outer"] = cfg.shape.outer;
  }
  if (cfg.shape.type == "perturbed_circle") sh["fourier_modes"] = cfg.shape.fourier_modes;
  if (cfg.shape.type == "dumbbell") sh["neck"] = cfg.shape.neck;
  return json{{"shape", sh},
              {"theta", cfg.theta},
              {"nodes", cfg.nodes},
              {"t_end", cfg.t_end},
              {"dt_max", cfg.dt_max},
              {"cfl", cfg.cfl},
              {"r_min", cfg.r_min},
              {"solver_tol", cfg.solver_tol},
              {"velocity_source", cfg.velocity_source},
              {"record_every", cfg.record_every},
              {"resample_ratio", cfg.resample_ratio},
              {"area_tol", cfg.area_tol},
              {"growth_calibration", cfg.growth_calibration}};
}

ScenarioConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path.string());
  json j;
  in >> j;
  return config_from_json(j);
}

json record_to_json(const DiagnosticsRecord& r) {
  json j{{"t", r.t},
         {"step_index", r.step_index},
         {"dt", r.dt},
         {"perimeter", r.perimeter},
         {"area", r.area},
         {"r_ubc", r.r_ubc},
         {"ubc_alternative", r.ubc_alternative},
         {"kappa_max", r.kappa_max},
         {"k_l2_sq", r.k_l2_sq},
         {"dk_l2_sq", r.dk_l2_sq},
         {"dissipation", r.dissipation},
         {"sym_energy_l2_sq", r.sym_energy_l2_sq},
         {"max_normal_speed", r.max_normal_speed},
         {"ratio_symmcontrol", r.ratio_symmcontrol},
         {"holder_quotient_prev", r.holder_quotient_prev}};
  if (r.interior_norms_present) {
    j["grad_u_l2_sq_interior"] = r.grad_u_l2_sq_interior;
    j["grad2_u_l2_sq_interior"] = r.grad2_u_l2_sq_interior;
    j["interior_norm_error_estimate"] = r.interior_norm_error_estimate;
    j["collar_unaudited"] = r.collar_unaudited;
    j["ratio_h2control"] = r.ratio_h2control;
  }
  if (r.K0 > 0) {
    j["K0"] = r.K0;
    j["T1"] = r.T1;
    j["Tstar"] = r.Tstar;
    j["growth_envelope"] =
        std::isfinite(r.growth_envelope) ? json(r.growth_envelope) : json("inf");
    j["dk_within_K0"] = r.dk_within_K0;
  }
  return j;
}

json check_to_json(const IdentityCheckResult& c) {
  return json{{"name", c.name},
              {"lhs", c.lhs},
              {"rhs", c.rhs},
              {"abs_residual", c.abs_residual},
              {"rel_residual", c.rel_residual},
              {"resolution", c.resolution},
              {"tolerance", c.tolerance},
              {"one_sided", c.one_sided},
              {"pass", c.pass}};
}

json row_to_json(const InequalityRow& r) {
  return json{{"domain", r.domain},
              {"inequality", r.inequality},
              {"field", r.field},
              {"lhs", r.lhs},
              {"structural_rhs", r.structural_rhs},
              {"ratio", r.ratio},
              {"ratio_p2", r.ratio_p2},
              {"r_omega", r.r_omega},
              {"area", r.area},
              {"perimeter", r.perimeter}};
}

}  // namespace dropflow::io
