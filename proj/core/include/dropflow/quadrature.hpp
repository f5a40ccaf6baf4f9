#pragma once

#include <functional>
#include <limits>

#include "dropflow/geometry.hpp"

namespace dropflow {

// Masked uniform-grid quadrature over regions {lo < d_Omega < hi} with
// cell-clipping against linearly interpolated corner distances (exact for a
// locally linear distance field); midpoint/centroid evaluation. Second order
// overall.
class GridQuadrature {
 public:
  GridQuadrature(const BoundaryProximity& prox, double spacing, double pad = 0.0);

  // Integral of f over {lo < d < hi}. Omega itself is {d < 0}.
  double integrate(const std::function<double(const Vec2&)>& f,
                   double lo = -std::numeric_limits<double>::infinity(),
                   double hi = 0.0) const;

  // Region area of {lo < d < hi}.
  double region_area(double lo, double hi) const;

  // Max of |f| over the centers of fully interior cells (a lambda-stable
  // point set, used for reported sup norms).
  double max_abs_interior(const std::function<double(const Vec2&)>& f) const;

  double spacing() const { return h_; }

 private:
  struct Cell {
    double x0, y0;   // lower-left corner
    double d[4];     // corner distances: (x0,y0),(x0+h,y0),(x0+h,y0+h),(x0,y0+h)
  };
  template <typename F>
  double accumulate(F&& f, double lo, double hi) const;

  std::vector<Cell> cells_;
  double h_ = 0.0;
};

}  // namespace dropflow
