#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dropflow/curve.hpp"
#include "dropflow/stokes.hpp"

namespace dropflow {

// Initial shape descriptors understood by the scenario runner.
struct ShapeSpec {
  std::string type;  // circle | ellipse | annulus | perturbed_circle | dumbbell
  double radius = 1.0;                 // circle, perturbed_circle
  double a = 2.0, b = 1.0;             // ellipse
  double inner = 1.0, outer = 2.0;     // annulus
  std::vector<double> fourier_modes;   // perturbed_circle, indexed from mode 1
  double neck = 0.1;                   // dumbbell

  Boundary build(int nodes_per_component) const;
};

// Prescribed normal-velocity field v(x) used by the geometric-identity test
// mode (bypasses the Stokes solve).
using PrescribedVelocity = std::function<double(const Vec2&)>;
PrescribedVelocity prescribed_velocity_by_id(const std::string& id);

struct ScenarioConfig {
  ShapeSpec shape;
  double theta = 1.0;
  int nodes = 128;             // per component
  double t_end = 1.0;
  double dt_max = 0.05;
  double cfl = 0.5;
  double r_min = 1e-3;         // stop when the UBC radius falls below this
  double solver_tol = 1e-6;    // a-posteriori traction-residual gate during runs
  std::string velocity_source = "stokes";  // or "prescribed:<id>"
  int record_every = 1;        // records every k-th step (and the final state)
  double resample_ratio = kMaxSpacingRatio;  // spacing-ratio trigger
  double area_tol = 1e-4;      // warn threshold for area drift
  double growth_calibration = 1.0;  // C_cal of the growth envelope monitor

  void validate() const;  // throws std::invalid_argument
};

struct SimulationState {
  double t = 0.0;
  Boundary boundary;
  std::optional<FluidSolution> solution;  // absent in prescribed mode
  int step_index = 0;
  double last_dt = 0.0;
};

enum class StopReason { None, TimeEnd, RMinReached, SelfIntersection, ResolutionFloor, SolverFailure };
std::string to_string(StopReason r);

// Largest admissible step from the current solution:
// dt = min(dt_max, cfl h_min / |v|_inf, cfl r_t^2 theta).
double adapt_dt(const SimulationState& state, const ScenarioConfig& config);

// One midpoint (RK2) step with a fresh solve at the half step; retries with
// halved dt (up to 10 times) if the trial boundary self-intersects.
SimulationState step(const SimulationState& state, const ScenarioConfig& config,
                     double dt);

struct Trajectory {
  std::vector<SimulationState> states;  // recorded states (cadence + final)
  StopReason stop = StopReason::None;
  std::string failure_message;
};

// Advance from the initial shape until t_end or a stop condition.
Trajectory run(const ScenarioConfig& config);

// Normal speed bound of the current state (max |v| over nodes).
double max_normal_speed(const SimulationState& state, const ScenarioConfig& config);

}  // namespace dropflow
