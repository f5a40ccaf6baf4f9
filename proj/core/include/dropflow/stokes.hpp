#pragma once

#include <optional>
#include <vector>

#include "dropflow/curve.hpp"

namespace dropflow {

// Solution of the interior quasi-steady Stokes problem with surface-tension
// traction data kappa*nu = [pI - 2 theta sym(grad u)] nu, in the
// moment-preserving class (zero mean velocity, symmetric mean velocity
// gradient).
//
// Representation: single-layer Stokeslet potential plus one potential source
// per hole (holes carry net flux the single layer cannot produce) plus a
// rigid-motion completion fixed by the moment constraints.
struct FluidSolution {
  double theta = 1.0;
  BoundaryField boundary_velocity;  // 2-vector per node
  BoundaryField normal_velocity;    // scalar v = <u, nu>
  BoundaryField pressure_trace;     // p on the boundary
  BoundaryField layer_density;      // single-layer density psi
  std::vector<double> source_strengths;  // one per hole (net hole flux)
  Eigen::Vector3d rigid_coefficients = Eigen::Vector3d::Zero();

  double traction_residual = 0.0;  // max-norm a-posteriori residual
  double moment_residual = 0.0;    // re-measured moment functionals
  double rcond = 0.0;              // reciprocal condition estimate
};

struct StokesOptions {
  double tol = 1e-8;          // acceptable traction residual (max norm)
  double rcond_min = 1e-13;   // below this the bordered system counts as singular
};

// Solve the traction problem on the given boundary. Throws std::runtime_error
// with a condition estimate if the bordered system is numerically
// rank-deficient, or if the traction residual exceeds tol.
FluidSolution solve_stokes(const Boundary& boundary, double theta,
                           const StokesOptions& opts = {});

struct InteriorEval {
  Vec2 u = Vec2::Zero();
  Mat2 grad_u = Mat2::Zero();
  Tensor3 hess_u{Mat2::Zero(), Mat2::Zero()};
  double p = 0.0;
};

// Layer-potential evaluation strictly inside Omega. Points closer to the
// boundary than `near_band` (default 2 local spacings) are rejected, as is
// anything outside Omega.
std::vector<InteriorEval> evaluate_interior(const FluidSolution& sol,
                                            const Boundary& boundary,
                                            const std::vector<Vec2>& points,
                                            std::optional<double> near_band = {});

// Cached layer-potential evaluator (no inside/band guard; bulk monitors
// manage their own bands).
class StokesEvaluator {
 public:
  StokesEvaluator(const FluidSolution& sol, const Boundary& boundary);
  InteriorEval operator()(const Vec2& point) const;

 private:
  Eigen::ArrayX2d X_;
  Eigen::ArrayXd W_;
  Eigen::VectorXd psi_;
  std::vector<Vec2> hole_centers_;
  std::vector<double> source_strengths_;
  Eigen::Vector3d rigid_ = Eigen::Vector3d::Zero();
  double theta_ = 1.0;
};

InteriorEval evaluate_point_unchecked(const FluidSolution& sol, const Boundary& boundary,
                                      const Vec2& point);

struct DissipationResult {
  double boundary_route = 0.0;   // -int kappa <u,nu> dH^1
  double interior_route = 0.0;   // 2 theta int |sym grad u|^2 dx (if requested)
  bool cross_checked = false;
  double relative_gap = 0.0;
};

// Dissipation D = -int kappa <u,nu>. With cross_check, also the interior grid
// quadrature of 2 theta |sym grad u|^2 (boundary collar integrated via the
// trace of sym grad u along normal lines).
DissipationResult dissipation(const FluidSolution& sol, const Boundary& boundary,
                              bool cross_check = false, double cross_tol = 0.02);

struct MomentFunctionals {
  Vec2 mean_velocity = Vec2::Zero();   // int_Omega u dx (boundary-reduced)
  double net_rotation = 0.0;           // int_Omega (d1 u2 - d2 u1) dx
};

MomentFunctionals moment_functionals(const FluidSolution& sol, const Boundary& boundary);

// sym(grad u) on the boundary from the velocity trace alone (tangential
// derivative + incompressibility + zero tangential traction).
BoundaryField boundary_sym_grad_sq(const FluidSolution& sol, const Boundary& boundary);

// Quadrature weights for the 2pi-periodic log kernel
// int_0^{2pi} f(s) ln(4 sin^2((t_i - s)/2)) ds  ~  sum_j R_{i-j} f(s_j).
Eigen::ArrayXd kress_log_weights(int n);

}  // namespace dropflow
