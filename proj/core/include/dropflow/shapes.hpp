#pragma once

#include <vector>

#include "dropflow/curve.hpp"

namespace dropflow {
namespace shapes {

ClosedCurve circle(double radius, int n, const Vec2& center = Vec2::Zero(),
                   bool hole = false);
ClosedCurve ellipse(double a, double b, int n, const Vec2& center = Vec2::Zero());

// r(phi) = radius * (1 + sum_k eps_k cos(k phi)), coefficients indexed from
// mode 1.
ClosedCurve perturbed_circle(double radius, const std::vector<double>& modes, int n);

// Two fat lobes joined by a flat slab neck of half-width w:
//   gamma(t) = (-2 sin t, tanh(3 cos t)/tanh 3 * (w + (1 - w) sin^8 t))
ClosedCurve dumbbell(double neck_half_width, int n);

Boundary disk_boundary(double radius, int n);
Boundary ellipse_boundary(double a, double b, int n);
Boundary annulus_boundary(double inner, double outer, int n_per_ring);
Boundary perturbed_circle_boundary(double radius, const std::vector<double>& modes, int n);
Boundary dumbbell_boundary(double neck_half_width, int n);

Boundary scaled(const Boundary& boundary, double lambda);
Boundary translated(const Boundary& boundary, const Vec2& shift);
Boundary rotated(const Boundary& boundary, double angle);

}  // namespace shapes
}  // namespace dropflow
