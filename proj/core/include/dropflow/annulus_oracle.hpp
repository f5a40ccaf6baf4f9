#pragma once

#include <stdexcept>

namespace dropflow {

// Closed-form evolution of an annulus with inner radius l0 and outer radius
// L0 under unit surface tension. The enclosed area A = pi (L^2 - l^2) is
// conserved;
//   l(t) = (A/pi - (b0 + t/2)^2) / (2 b0 + t),
//   L(t) = (A/pi + (b0 + t/2)^2) / (2 b0 + t),  b0 = sqrt(A/pi + l0^2) - l0,
// up to the hole collapse at t0 = 2 sqrt(A/pi) - 2 b0. A viscosity theta
// rescales time: the theta-evolution at time t equals the unit-viscosity
// evolution at t / theta.
class AnnulusOracle {
 public:
  AnnulusOracle(double l0, double L0, double theta = 1.0);

  struct State {
    double inner = 0.0;        // l(t)
    double outer = 0.0;        // L(t)
    double lambda = 0.0;       // u = lambda x/|x|^2, lambda = -Ll/(2(L-l))
    double pressure = 0.0;     // p = 1/(L-l)
    double v_inner = 0.0;      // normal velocity on the inner ring (-lambda/l)
    double v_outer = 0.0;      // normal velocity on the outer ring (lambda/L)
    double perimeter = 0.0;
    double area = 0.0;
    double r_ubc = 0.0;        // min(l, (L-l)/2)
    double k_l2_sq = 0.0;      // 2 pi (1/l + 1/L)
    double dissipation = 0.0;  // pi (L+l)/(L-l)
  };

  // State at time t; rejects t >= theta * t0 (collapsed hole).
  State at(double t) const;

  double collapse_time() const { return theta_ * t0_; }
  double area() const { return area_; }

 private:
  double l0_, theta_, aop_;  // aop = A/pi
  double b0_, t0_, area_;
};

}  // namespace dropflow
