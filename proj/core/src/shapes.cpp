#include "dropflow/shapes.hpp"

#include <cmath>
#include <numbers>

namespace dropflow::shapes {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ClosedCurve circle(double radius, int n, const Vec2& center, bool hole) {
  ClosedCurve c;
  c.is_hole = hole;
  c.nodes.resize(n, 2);
  const double sign = hole ? -1.0 : 1.0;  // holes traverse clockwise
  for (int j = 0; j < n; ++j) {
    const double t = sign * kTwoPi * j / n;
    c.nodes(j, 0) = center.x() + radius * std::cos(t);
    c.nodes(j, 1) = center.y() + radius * std::sin(t);
  }
  return c;
}

ClosedCurve ellipse(double a, double b, int n, const Vec2& center) {
  ClosedCurve c;
  c.nodes.resize(n, 2);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    c.nodes(j, 0) = center.x() + a * std::cos(t);
    c.nodes(j, 1) = center.y() + b * std::sin(t);
  }
  return c;
}

ClosedCurve perturbed_circle(double radius, const std::vector<double>& modes, int n) {
  ClosedCurve c;
  c.nodes.resize(n, 2);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    double r = radius;
    for (std::size_t k = 0; k < modes.size(); ++k)
      r += radius * modes[k] * std::cos((k + 1) * t);
    c.nodes(j, 0) = r * std::cos(t);
    c.nodes(j, 1) = r * std::sin(t);
  }
  return c;
}

ClosedCurve dumbbell(double w, int n) {
  ClosedCurve c;
  c.nodes.resize(n, 2);
  const double norm = std::tanh(3.0);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const double s = std::sin(t);
    const double rho = w + (1.0 - w) * std::pow(s, 8);
    c.nodes(j, 0) = -2.0 * s;
    c.nodes(j, 1) = std::tanh(3.0 * std::cos(t)) / norm * rho;
  }
  return c;
}

Boundary disk_boundary(double radius, int n) {
  Boundary b;
  b.components.push_back(circle(radius, n));
  return b;
}

Boundary ellipse_boundary(double a, double b, int n) {
  Boundary bd;
  bd.components.push_back(ellipse(a, b, n));
  return bd;
}

Boundary annulus_boundary(double inner, double outer, int n_per_ring) {
  Boundary b;
  b.components.push_back(circle(outer, n_per_ring));
  b.components.push_back(circle(inner, n_per_ring, Vec2::Zero(), true));
  return b;
}

Boundary perturbed_circle_boundary(double radius, const std::vector<double>& modes, int n) {
  Boundary b;
  b.components.push_back(perturbed_circle(radius, modes, n));
  return b;
}

Boundary dumbbell_boundary(double w, int n) {
  Boundary b;
  b.components.push_back(dumbbell(w, n));
  return b;
}

Boundary scaled(const Boundary& boundary, double lambda) {
  Boundary out = boundary;
  for (auto& c : out.components) c.nodes *= lambda;
  return out;
}

Boundary translated(const Boundary& boundary, const Vec2& shift) {
  Boundary out = boundary;
  for (auto& c : out.components) {
    c.nodes.col(0) += shift.x();
    c.nodes.col(1) += shift.y();
  }
  return out;
}

Boundary rotated(const Boundary& boundary, double angle) {
  Boundary out = boundary;
  const double cs = std::cos(angle), sn = std::sin(angle);
  for (auto& c : out.components) {
    const Eigen::ArrayXd x = c.nodes.col(0), y = c.nodes.col(1);
    c.nodes.col(0) = cs * x - sn * y;
    c.nodes.col(1) = sn * x + cs * y;
  }
  return out;
}

}  // namespace dropflow::shapes
