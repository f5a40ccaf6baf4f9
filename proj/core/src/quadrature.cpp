#include "dropflow/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dropflow {

namespace {

struct Poly {
  std::array<Vec2, 16> pts;
  std::array<double, 16> vals;
  int n = 0;
  void push(const Vec2& p, double v) {
    pts[n] = p;
    vals[n] = v;
    ++n;
  }
};

// Clip polygon against {val < level} with linear interpolation on edges.
Poly clip_below(const Poly& in, double level) {
  Poly out;
  for (int i = 0; i < in.n; ++i) {
    const int j = (i + 1) % in.n;
    const bool ini = in.vals[i] < level, inj = in.vals[j] < level;
    if (ini) out.push(in.pts[i], in.vals[i]);
    if (ini != inj) {
      const double t = (level - in.vals[i]) / (in.vals[j] - in.vals[i]);
      out.push(in.pts[i] + t * (in.pts[j] - in.pts[i]), level);
    }
  }
  return out;
}

Poly clip_above(const Poly& in, double level) {
  Poly out;
  for (int i = 0; i < in.n; ++i) {
    const int j = (i + 1) % in.n;
    const bool ini = in.vals[i] > level, inj = in.vals[j] > level;
    if (ini) out.push(in.pts[i], in.vals[i]);
    if (ini != inj) {
      const double t = (level - in.vals[i]) / (in.vals[j] - in.vals[i]);
      out.push(in.pts[i] + t * (in.pts[j] - in.pts[i]), level);
    }
  }
  return out;
}

// area and centroid of a convex polygon
std::pair<double, Vec2> area_centroid(const Poly& p) {
  if (p.n < 3) return {0.0, Vec2::Zero()};
  double a = 0.0;
  Vec2 c = Vec2::Zero();
  for (int i = 0; i < p.n; ++i) {
    const int j = (i + 1) % p.n;
    const double cr = p.pts[i].x() * p.pts[j].y() - p.pts[j].x() * p.pts[i].y();
    a += cr;
    c += (p.pts[i] + p.pts[j]) * cr;
  }
  a *= 0.5;
  if (std::abs(a) < 1e-300) return {0.0, Vec2::Zero()};
  c /= (6.0 * a);
  return {std::abs(a), c};
}

}  // namespace

GridQuadrature::GridQuadrature(const BoundaryProximity& prox, double spacing, double pad)
    : h_(spacing) {
  double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& c : prox.boundary().components) {
    xmin = std::min(xmin, c.nodes.col(0).minCoeff());
    xmax = std::max(xmax, c.nodes.col(0).maxCoeff());
    ymin = std::min(ymin, c.nodes.col(1).minCoeff());
    ymax = std::max(ymax, c.nodes.col(1).maxCoeff());
  }
  xmin -= pad + h_;
  ymin -= pad + h_;
  xmax += pad + h_;
  ymax += pad + h_;
  const int nx = static_cast<int>(std::ceil((xmax - xmin) / h_));
  const int ny = static_cast<int>(std::ceil((ymax - ymin) / h_));

  // corner distances on the (nx+1) x (ny+1) lattice; Newton refinement only
  // near the boundary where cell clipping reads exact values
  const double refine_band = 4.0 * h_;
  Eigen::ArrayXXd dist(nx + 1, ny + 1);
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j)
      dist(i, j) = prox.signed_distance(Vec2(xmin + i * h_, ymin + j * h_), refine_band);

  cells_.reserve(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      Cell c;
      c.x0 = xmin + i * h_;
      c.y0 = ymin + j * h_;
      c.d[0] = dist(i, j);
      c.d[1] = dist(i + 1, j);
      c.d[2] = dist(i + 1, j + 1);
      c.d[3] = dist(i, j + 1);
      cells_.push_back(c);
    }
  }
}

template <typename F>
double GridQuadrature::accumulate(F&& f, double lo, double hi) const {
  // margin by which corner distances can underestimate the in-cell range
  const double slack = 0.75 * h_;
  double acc = 0.0, comp = 0.0;  // Kahan-compensated sum
  auto add = [&acc, &comp](double term) {
    const double y = term - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  };
  for (const auto& c : cells_) {
    const double dmin = std::min(std::min(c.d[0], c.d[1]), std::min(c.d[2], c.d[3]));
    const double dmax = std::max(std::max(c.d[0], c.d[1]), std::max(c.d[2], c.d[3]));
    if (dmin > hi || dmax < lo) continue;
    const bool interior = (dmax < hi - slack) && (dmin > lo + slack);
    if (interior) {
      add(f(Vec2(c.x0 + 0.5 * h_, c.y0 + 0.5 * h_)) * h_ * h_);
      continue;
    }
    Poly p;
    p.push(Vec2(c.x0, c.y0), c.d[0]);
    p.push(Vec2(c.x0 + h_, c.y0), c.d[1]);
    p.push(Vec2(c.x0 + h_, c.y0 + h_), c.d[2]);
    p.push(Vec2(c.x0, c.y0 + h_), c.d[3]);
    if (dmax >= hi) p = clip_below(p, hi);
    if (p.n >= 3 && dmin <= lo) p = clip_above(p, lo);
    const auto [a, centroid] = area_centroid(p);
    // degenerate slivers carry cancellation noise in both area and centroid
    if (a <= 1e-12 * h_ * h_) continue;
    const Vec2 cc(std::clamp(centroid.x(), c.x0, c.x0 + h_),
                  std::clamp(centroid.y(), c.y0, c.y0 + h_));
    add(f(cc) * a);
  }
  return acc;
}

double GridQuadrature::integrate(const std::function<double(const Vec2&)>& f, double lo,
                                 double hi) const {
  return accumulate(f, lo, hi);
}

double GridQuadrature::region_area(double lo, double hi) const {
  return accumulate([](const Vec2&) { return 1.0; }, lo, hi);
}

double GridQuadrature::max_abs_interior(const std::function<double(const Vec2&)>& f) const {
  double m = 0.0;
  for (const auto& c : cells_) {
    const double dmax = std::max(std::max(c.d[0], c.d[1]), std::max(c.d[2], c.d[3]));
    if (dmax < -0.75 * h_)
      m = std::max(m, std::abs(f(Vec2(c.x0 + 0.5 * h_, c.y0 + 0.5 * h_))));
  }
  return m;
}

}  // namespace dropflow
