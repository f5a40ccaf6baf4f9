#include "dropflow/evolve.hpp"

#include <cmath>
#include <stdexcept>

#include "dropflow/geometry.hpp"
#include "dropflow/shapes.hpp"

namespace dropflow {

Boundary ShapeSpec::build(int n) const {
  if (type == "circle") return shapes::disk_boundary(radius, n);
  if (type == "ellipse") return shapes::ellipse_boundary(a, b, n);
  if (type == "annulus") return shapes::annulus_boundary(inner, outer, n);
  if (type == "perturbed_circle")
    return shapes::perturbed_circle_boundary(radius, fourier_modes, n);
  if (type == "dumbbell") return shapes::dumbbell_boundary(neck, n);
  throw std::invalid_argument("unknown shape type: " + type);
}

PrescribedVelocity prescribed_velocity_by_id(const std::string& id) {
  if (id == "unit_shrink") return [](const Vec2&) { return -1.0; };
  if (id == "unit_grow") return [](const Vec2&) { return 1.0; };
  if (id == "shear") return [](const Vec2& x) { return 0.3 * std::sin(x.x()) * std::cos(x.y()); };
  if (id == "radial") return [](const Vec2& x) { return -0.5 * x.norm(); };
  if (id == "ellipse_csf") {
    // curve shortening v = -kappa on the a=2, b=1 ellipse, written as a
    // smooth ambient function of position (valid near that ellipse)
    return [](const Vec2& x) {
      const double a = 2.0, b = 1.0;
      const double m = a * a * x.y() * x.y() / (b * b) + b * b * x.x() * x.x() / (a * a);
      return -a * b / std::pow(std::max(m, 1e-12), 1.5);
    };
  }
  throw std::invalid_argument("unknown prescribed velocity id: " + id);
}

void ScenarioConfig::validate() const {
  if (theta <= 0) throw std::invalid_argument("config: theta must be positive");
  if (nodes < kMinNodes) throw std::invalid_argument("config: nodes must be >= 16");
  if (t_end <= 0) throw std::invalid_argument("config: t_end must be positive");
  if (dt_max <= 0) throw std::invalid_argument("config: dt_max must be positive");
  if (!(cfl > 0 && cfl <= 1)) throw std::invalid_argument("config: cfl must lie in (0,1]");
  if (r_min <= 0) throw std::invalid_argument("config: r_min must be positive");
  if (solver_tol <= 0) throw std::invalid_argument("config: solver_tol must be positive");
  if (record_every < 1) throw std::invalid_argument("config: record_every must be >= 1");
  if (velocity_source != "stokes" && velocity_source.rfind("prescribed:", 0) != 0)
    throw std::invalid_argument("config: velocity_source must be 'stokes' or 'prescribed:<id>'");
  if (velocity_source.rfind("prescribed:", 0) == 0)
    prescribed_velocity_by_id(velocity_source.substr(11));
  shape.build(std::max(nodes, kMinNodes));  // validates the shape type
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::None: return "none";
    case StopReason::TimeEnd: return "t_end reached";
    case StopReason::RMinReached: return "r_min reached";
    case StopReason::SelfIntersection: return "self-intersection unresolvable";
    case StopReason::ResolutionFloor: return "ubc resolution floor";
    case StopReason::SolverFailure: return "solver failure";
  }
  return "?";
}

namespace {

bool prescribed_mode(const ScenarioConfig& cfg) {
  return cfg.velocity_source.rfind("prescribed:", 0) == 0;
}

BoundaryField prescribed_samples(const Boundary& bd, const ScenarioConfig& cfg) {
  auto v = prescribed_velocity_by_id(cfg.velocity_source.substr(11));
  BoundaryField f = BoundaryField::scalar(bd.component_sizes());
  for (std::size_t k = 0; k < bd.components.size(); ++k)
    for (int i = 0; i < bd.components[k].size(); ++i)
      f.comp[k](i, 0) = v(bd.components[k].node(i));
  return f;
}

// normal velocity of a boundary, solving Stokes unless prescribed
BoundaryField velocity_of(const Boundary& bd, const ScenarioConfig& cfg,
                          std::optional<FluidSolution>* sol_out) {
  if (prescribed_mode(cfg)) {
    if (sol_out) sol_out->reset();
    return prescribed_samples(bd, cfg);
  }
  StokesOptions opts;
  opts.tol = cfg.solver_tol;
  FluidSolution sol = solve_stokes(bd, cfg.theta, opts);
  BoundaryField f = sol.normal_velocity;
  if (sol_out) *sol_out = std::move(sol);
  return f;
}

double spacing_ratio(const Boundary& bd) {
  double r = 1.0;
  for (const auto& c : bd.components) {
    const CurveFrame f = curve_frame(c);
    r = std::max(r, f.h_max / f.h_min);
  }
  return r;
}

Boundary resample_all(const Boundary& bd, int n) {
  Boundary out = bd;
  for (auto& c : out.components) c = resample(c, n);
  return out;
}

}  // namespace

double max_normal_speed(const SimulationState& state, const ScenarioConfig& config) {
  BoundaryField v;
  if (state.solution)
    v = state.solution->normal_velocity;
  else
    v = prescribed_mode(config) ? prescribed_samples(state.boundary, config)
                                : velocity_of(state.boundary, config, nullptr);
  double m = 0;
  for (const auto& c : v.comp) m = std::max(m, c.col(0).abs().maxCoeff());
  return m;
}

double adapt_dt(const SimulationState& state, const ScenarioConfig& config) {
  const double speed = max_normal_speed(state, config);
  double h_min = std::numeric_limits<double>::max();
  for (const auto& c : state.boundary.components)
    h_min = std::min(h_min, curve_frame(c).h_min);
  const double r_t = ubc_radius(state.boundary).r_omega;
  double dt = config.dt_max;
  if (speed > 0) dt = std::min(dt, config.cfl * h_min / speed);
  dt = std::min(dt, config.cfl * r_t * r_t * config.theta);
  // tension-relaxation stiffness: the fastest boundary mode decays at a rate
  // ~ k/theta, so explicit stability demands dt <~ 0.6 theta h; keep margin
  dt = std::min(dt, 0.5 * config.cfl * config.theta * h_min);
  return dt;
}

SimulationState step(const SimulationState& state, const ScenarioConfig& config,
                     double dt) {
  // stage-1 velocity: reuse the carried solution when present
  BoundaryField v1;
  if (state.solution)
    v1 = state.solution->normal_velocity;
  else
    v1 = velocity_of(state.boundary, config, nullptr);

  for (int attempt = 0; attempt < 10; ++attempt, dt /= 2.0) {
    Boundary mid = state.boundary;
    for (std::size_t k = 0; k < mid.components.size(); ++k) {
      const CurveFrame f = curve_frame(state.boundary.components[k]);
      mid.components[k].nodes.col(0) += 0.5 * dt * v1.comp[k].col(0).array() * f.nu.col(0);
      mid.components[k].nodes.col(1) += 0.5 * dt * v1.comp[k].col(0).array() * f.nu.col(1);
    }
    if (self_intersects(mid).intersects) continue;

    const BoundaryField v2 = velocity_of(mid, config, nullptr);
    Boundary next = state.boundary;
    for (std::size_t k = 0; k < mid.components.size(); ++k) {
      const CurveFrame fm = curve_frame(mid.components[k]);
      next.components[k].nodes.col(0) += dt * v2.comp[k].col(0).array() * fm.nu.col(0);
      next.components[k].nodes.col(1) += dt * v2.comp[k].col(0).array() * fm.nu.col(1);
    }
    if (self_intersects(next).intersects) continue;

    if (spacing_ratio(next) > config.resample_ratio)
      next = resample_all(next, config.nodes);

    SimulationState out;
    out.t = state.t + dt;
    out.step_index = state.step_index + 1;
    out.last_dt = dt;
    std::optional<FluidSolution> sol;
    velocity_of(next, config, &sol);
    out.solution = std::move(sol);
    out.boundary = std::move(next);
    return out;
  }
  throw std::runtime_error("step: trial boundary self-intersects after 10 halvings");
}

Trajectory run(const ScenarioConfig& config) {
  config.validate();
  Trajectory traj;
  SimulationState state;
  state.boundary = config.shape.build(config.nodes);
  state.boundary.validate();
  {
    std::optional<FluidSolution> sol;
    velocity_of(state.boundary, config, &sol);
    state.solution = std::move(sol);
  }
  traj.states.push_back(state);

  while (true) {
    if (state.t >= config.t_end - 1e-14) {
      traj.stop = StopReason::TimeEnd;
      break;
    }
    const DomainGeometry geom = ubc_radius(state.boundary);
    if (geom.r_omega < config.r_min) {
      traj.stop = StopReason::RMinReached;
      break;
    }
    if (geom.degenerate) {
      traj.stop = StopReason::ResolutionFloor;
      break;
    }
    double dt = std::min(adapt_dt(state, config), config.t_end - state.t);
    try {
      state = step(state, config, dt);
    } catch (const std::runtime_error& e) {
      traj.stop = std::string(e.what()).find("self-intersects") != std::string::npos
                      ? StopReason::SelfIntersection
                      : StopReason::SolverFailure;
      traj.failure_message = e.what();
      break;
    }
    if (state.step_index % config.record_every == 0) traj.states.push_back(state);
  }
  if (traj.states.back().step_index != state.step_index) traj.states.push_back(state);
  return traj;
}

}  // namespace dropflow
