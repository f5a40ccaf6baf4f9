#include "dropflow/annulus_oracle.hpp"

#include <cmath>
#include <numbers>

namespace dropflow {

namespace {
constexpr double kPi = std::numbers::pi;
}

AnnulusOracle::AnnulusOracle(double l0, double L0, double theta)
    : l0_(l0), theta_(theta) {
  if (!(0 < l0 && l0 < L0)) throw std::invalid_argument("annulus oracle: need 0 < l0 < L0");
  if (theta <= 0) throw std::invalid_argument("annulus oracle: theta must be positive");
  area_ = kPi * (L0 * L0 - l0 * l0);
  aop_ = area_ / kPi;
  b0_ = std::sqrt(aop_ + l0 * l0) - l0;
  t0_ = 2.0 * std::sqrt(aop_) - 2.0 * b0_;
}

AnnulusOracle::State AnnulusOracle::at(double t) const {
  if (t < 0) throw std::invalid_argument("annulus oracle: t must be nonnegative");
  if (t >= theta_ * t0_)
    throw std::invalid_argument("annulus oracle: t beyond the collapse time");
  const double s = t / theta_;  // unit-viscosity time
  State st;
  const double b = b0_ + s / 2.0;
  st.inner = (aop_ - b * b) / (2.0 * b0_ + s);
  st.outer = (aop_ + b * b) / (2.0 * b0_ + s);
  st.lambda = -st.outer * st.inner / (2.0 * (st.outer - st.inner));
  st.pressure = 1.0 / (st.outer - st.inner);
  st.v_inner = -st.lambda / st.inner;
  st.v_outer = st.lambda / st.outer;
  st.perimeter = 2.0 * kPi * (st.inner + st.outer);
  st.area = area_;
  st.r_ubc = std::min(st.inner, (st.outer - st.inner) / 2.0);
  st.k_l2_sq = 2.0 * kPi * (1.0 / st.inner + 1.0 / st.outer);
  st.dissipation = kPi * (st.outer + st.inner) / (st.outer - st.inner);
  return st;
}

}  // namespace dropflow
