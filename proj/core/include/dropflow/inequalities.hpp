#pragma once

#include <string>
#include <vector>

#include "dropflow/curve.hpp"
#include "dropflow/fields.hpp"

namespace dropflow {

struct NamedBoundary {
  std::string name;
  Boundary boundary;
};

// One row of the empirical-constant table: the measured ratio of the left
// side to the structural right side of a quantified inequality with the
// paper's constant set to 1. Reported, not pass/fail (the constants are not
// explicit).
struct InequalityRow {
  std::string domain;
  std::string inequality;  // poincare | gn_l2 | gn_linf | korn | korn_cutoff |
                           // korn_poincare | korn_poincare_mean | interior_reg
  std::string field;
  double lhs = 0.0;
  double structural_rhs = 0.0;  // with C = 1
  double ratio = 0.0;           // lhs / structural_rhs
  double ratio_p2 = 0.0;        // Poincare only: r-free probe lhs/(P^2 grad^2)
  double r_omega = 0.0;
  double area = 0.0;
  double perimeter = 0.0;
};

// Empirical-constant table over the given domains. `random_trials` adds
// band-limited random fields per domain on top of the named library fields.
// With lambda != 1 every domain is rescaled by lambda and every trial field
// replaced by its pullback; all reported ratios are invariant under this.
std::vector<InequalityRow> inequality_table(const std::vector<NamedBoundary>& domains,
                                            int random_trials, double grid_scale = 12.0,
                                            double lambda = 1.0);

// Standard verification family: disk, ellipse, annulus, three dumbbells.
std::vector<NamedBoundary> standard_inequality_domains(int nodes);

// lambda-pullbacks f_lambda(x) = f(x/lambda) with correctly scaled tensors.
ScalarField scaled_field(const ScalarField& f, double lambda);
VectorField scaled_field(const VectorField& f, double lambda);

}  // namespace dropflow
