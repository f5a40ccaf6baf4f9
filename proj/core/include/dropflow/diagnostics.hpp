#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dropflow/curve.hpp"
#include "dropflow/evolve.hpp"
#include "dropflow/fields.hpp"
#include "dropflow/geometry.hpp"

namespace dropflow {

// One verified identity: two independent numerical routes to the same number.
struct IdentityCheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  std::string resolution;  // human-readable description of N / h / dt used
  double tolerance = 0.0;
  bool pass = false;       // pass <=> residual <= tolerance
  bool one_sided = false;  // inequality checks: pass <=> lhs <= rhs (+ tol)

  static IdentityCheckResult equality(std::string name, double lhs, double rhs,
                                      double tol, std::string resolution);
  static IdentityCheckResult inequality(std::string name, double lhs, double rhs,
                                        double tol, std::string resolution);
};

// Per-time quantitative report of a simulation state.
struct DiagnosticsRecord {
  double t = 0.0;
  int step_index = 0;
  double dt = 0.0;
  double perimeter = 0.0;
  double area = 0.0;
  double r_ubc = 0.0;
  std::string ubc_alternative;  // "curvature" | "neck" | "unresolved"
  double kappa_max = 0.0;
  double k_l2_sq = 0.0;
  double dk_l2_sq = 0.0;
  double dissipation = 0.0;       // -int kappa <u,nu>
  double sym_energy_l2_sq = 0.0;  // |sym grad u|^2_{L2} = dissipation / (2 theta)
  double max_normal_speed = 0.0;

  // interior norms on {d <= -r/4} (boundary collar reported as unaudited)
  double grad_u_l2_sq_interior = 0.0;
  double grad2_u_l2_sq_interior = 0.0;
  double interior_norm_error_estimate = 0.0;
  bool collar_unaudited = true;
  bool interior_norms_present = false;

  // empirical constants of the monitored estimates (paper constants set to 1)
  double ratio_symmcontrol = 0.0;
  double ratio_h2control = 0.0;

  // growth-envelope monitors (populated when a run context is available)
  double K0 = 0.0;
  double T1 = 0.0;
  double Tstar = 0.0;
  double growth_envelope = 0.0;  // tan-envelope value at t (inf if saturated)
  bool dk_within_K0 = true;
  double holder_quotient_prev = 0.0;  // |r_t - r_prev| / |t - t_prev|^{1/3}
};

// Run-level quantities the envelope monitors depend on.
struct MonitorContext {
  double P0 = 0.0;
  double A0 = 0.0;
  double r0 = 0.0;
  double dk0_sq = 0.0;
  double c_cal = 1.0;    // calibration constant of the growth envelope
  bool calibrated = false;
};

MonitorContext make_context(const Boundary& initial, double c_cal = 1.0,
                            bool calibrated = false);

// Full per-state report. `deep` adds the interior grid norms (more costly).
DiagnosticsRecord report(const SimulationState& state, const ScenarioConfig& config,
                         const MonitorContext* ctx = nullptr,
                         const DiagnosticsRecord* prev = nullptr, bool deep = true);

// Dissipation identity P_s - P_t = 2 theta int_s^t |sym grad u|^2 dh over the
// record sequence (per-interval and cumulative).
std::vector<IdentityCheckResult> check_dissipation_identity(
    const std::vector<DiagnosticsRecord>& records, double theta, double tol_interval,
    double tol_cumulative);

// The five geometric evolution identities under a prescribed normal velocity:
// dP/dt, d/dt int phi nu, d/dt int phi kappa, d/dt int kappa^2,
// d/dt int (d_tau kappa)^2, each via central time differences of the evolved
// boundary versus the boundary-integral right-hand sides at the center time.
std::vector<IdentityCheckResult> check_evolution_identities(
    const Boundary& boundary, const PrescribedVelocity& v, double dt, double tol);

// Reilly's formula: bulk grid route vs boundary spectral route.
IdentityCheckResult verify_reilly(const Boundary& boundary, const VectorField& field,
                                  double grid_h, double tol);

// Frame identity suite: pointwise Delta X / |grad^2 X|^2 / |grad^3 X|^2
// decompositions and the change-of-order rule against finite-difference frame
// derivatives; d_nu(div nu) = -(div nu)^2.
std::vector<IdentityCheckResult> verify_frame_identities(const Boundary& boundary,
                                                         const VectorField& field,
                                                         int tube_samples, double tol);

// Cutoff-based integral identities and inequalities:
//   int_bnd phi     = int_Om (phi d_nu eta + eta d_nu phi + eta phi div nu),
//   int_bnd k phi   = int_Om (eta d_nu phi div nu + phi d_nu eta div nu),
//   trace:    int_bnd f^2 <= int_Om (2/r) f^2 + 2 |f| |grad f|   (one-sided),
//   bulk curvature: int_{|d|<r/2} (d_tau div nu)^2 <= 4 r int (d_tau kappa)^2.
std::vector<IdentityCheckResult> verify_cutoff_identities(const Boundary& boundary,
                                                          const ScalarField& field,
                                                          double grid_h, double tol);

// Growth/continuity monitor table over a trajectory.
struct GronwallMonitor {
  double K0 = 0.0, T1 = 0.0, Tstar = 0.0;
  double c_cal = 1.0;
  bool calibrated = false;
  double holder_sup = 0.0;          // sup over record pairs of the 1/3-quotient
  bool envelope_contained = true;   // dk^2_t <= envelope(t) throughout
  bool K0_condition_held = true;    // dk^2_t <= K0 throughout
  double final_dk_sq = 0.0;
  double curvature_modulus_sup = 0.0;  // sup |kappa_t(x)-kappa_s(y)| / rho^{1/2}
  std::vector<IdentityCheckResult> window_checks;  // Prop-type windowed averages
  std::vector<double> envelope_trace;
  std::vector<double> dk_trace;
  std::vector<double> r_trace;
  std::vector<double> t_trace;
};

GronwallMonitor holder_and_gronwall_monitor(const Trajectory& traj, double theta,
                                            double c_cal, bool calibrated);

// Smallest constant making the growth envelope contain the run (with margin).
double calibrate_growth_constant(const Trajectory& traj, double theta);

// Windowed-average bound: |g(x) - avg_phi g| <= sqrt(pi) rho^{1/2}
// ||d_tau g||_{L2} with a tent window of arc half-width rho; checked for
// g = kappa at sampled points.
std::vector<IdentityCheckResult> check_windowed_average(const Boundary& boundary,
                                                        double rho, int samples);

}  // namespace dropflow
