#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dropflow/geometry.hpp"
#include "dropflow/shapes.hpp"

using namespace dropflow;

namespace {
constexpr double kPi = std::numbers::pi;

// Brute-force oracle: largest rho such that at `samples` boundary points the
// tangent balls of radius rho on both sides contain no other boundary nodes.
double ball_emptiness_oracle(const Boundary& bd, int samples) {
  std::vector<Vec2> all;
  std::vector<Vec2> all_nu;
  for (const auto& c : bd.components) {
    const CurveFrame f = curve_frame(c);
    for (int i = 0; i < c.size(); ++i) {
      all.push_back(c.node(i));
      all_nu.push_back(Vec2(f.nu(i, 0), f.nu(i, 1)));
    }
  }
  const int total = static_cast<int>(all.size());
  auto empty_for = [&](double rho) {
    for (int s = 0; s < samples; ++s) {
      const int i = (s * total) / samples;
      const Vec2 cin = all[i] - rho * all_nu[i];
      const Vec2 cout = all[i] + rho * all_nu[i];
      for (int j = 0; j < total; ++j) {
        if (j == i) continue;
        const double tol = 1e-9;
        if ((all[j] - cin).norm() < rho - tol) return false;
        if ((all[j] - cout).norm() < rho - tol) return false;
      }
    }
    return true;
  };
  double lo = 0.0, hi = 10.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (empty_for(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}
}  // namespace

TEST_CASE("signed distance: disk and annulus") {
  auto disk = shapes::disk_boundary(1.0, 64);
  BoundaryProximity prox(disk);
  CHECK(prox.signed_distance(Vec2(0, 0)) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(prox.signed_distance(Vec2(2, 0)) == doctest::Approx(1.0).epsilon(1e-9));

  auto ann = shapes::annulus_boundary(1.0, 2.0, 64);
  BoundaryProximity prox2(ann);
  CHECK(prox2.signed_distance(Vec2(1.5, 0)) == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(prox2.signed_distance(Vec2(0.0, 0)) == doctest::Approx(1.0).epsilon(1e-9));

  // |grad d| = 1: central differences at a generic interior point
  const double h = 1e-5;
  const Vec2 z(1.3, 0.4);
  const double gx =
      (prox2.signed_distance(z + Vec2(h, 0)) - prox2.signed_distance(z - Vec2(h, 0))) / (2 * h);
  const double gy =
      (prox2.signed_distance(z + Vec2(0, h)) - prox2.signed_distance(z - Vec2(0, h))) / (2 * h);
  CHECK(std::hypot(gx, gy) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("projection: disk, annulus, ellipse") {
  auto disk = shapes::disk_boundary(1.0, 64);
  BoundaryProximity prox(disk);
  auto pr = prox.project(Vec2(0.5, 0));
  CHECK(pr.point.x() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(pr.point.y()) < 1e-9);
  // identity x = pi(x) + d nu(pi(x))
  const Vec2 rec = pr.point + pr.distance * pr.normal;
  CHECK((rec - Vec2(0.5, 0)).norm() < 1e-8);

  auto ann = shapes::annulus_boundary(1.0, 2.0, 64);
  BoundaryProximity prox2(ann);
  auto pr2 = prox2.project(Vec2(1.3, 0));
  CHECK(pr2.point.x() == doctest::Approx(1.0).epsilon(1e-9));  // inner ring closer

  auto ell = shapes::ellipse_boundary(2.0, 1.0, 256);
  BoundaryProximity prox3(ell);
  auto pr3 = prox3.project(Vec2(0.0, 0.5));
  CHECK(pr3.point.x() == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(pr3.point.y() == doctest::Approx(1.0).epsilon(1e-8));
  const Vec2 rec3 = pr3.point + pr3.distance * pr3.normal;
  CHECK((rec3 - Vec2(0.0, 0.5)).norm() < 1e-8);
}

TEST_CASE("ubc radius: disk exact, annulus neck, ellipse curvature cap") {
  auto disk = shapes::disk_boundary(1.5, 128);
  auto g = ubc_radius(disk);
  CHECK(g.r_omega == doctest::Approx(1.5).epsilon(1e-12));

  auto ann = shapes::annulus_boundary(1.0, 2.0, 128);
  auto g2 = ubc_radius(ann);
  CHECK(g2.r_omega == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(!g2.curvature_limited);
  REQUIRE(g2.neck.has_value());
  CHECK(g2.neck->separation == doctest::Approx(2 * g2.r_omega).epsilon(1e-6));
  CHECK(g2.r_omega == doctest::Approx(ball_emptiness_oracle(ann, 64)).epsilon(1e-3));

  auto ell = shapes::ellipse_boundary(2.0, 1.0, 256);
  auto g3 = ubc_radius(ell);
  CHECK(g3.r_omega == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(g3.curvature_limited);
  CHECK(g3.r_omega == doctest::Approx(ball_emptiness_oracle(ell, 64)).epsilon(2e-3));

  // bounds r <= P and r <= sqrt(A/pi)
  CHECK(g3.r_omega <= std::sqrt(2 * kPi / kPi));
}

TEST_CASE("ubc radius: rescaling invariance") {
  auto ell = shapes::ellipse_boundary(2.0, 1.0, 128);
  auto g = ubc_radius(ell);
  const double lam = 3.25;
  auto g2 = ubc_radius(shapes::scaled(ell, lam));
  CHECK(g2.r_omega == doctest::Approx(lam * g.r_omega).epsilon(1e-12));
}

TEST_CASE("ubc radius: sublevel sets gain at least r - |rho|") {
  // {d < rho} of the unit disk is the disk of radius 1 + rho
  auto disk = shapes::disk_boundary(1.0, 64);
  auto g = ubc_radius(disk);
  const double rho = -0.3;
  auto sub = shapes::disk_boundary(1.0 + rho, 64);
  auto gs = ubc_radius(sub);
  CHECK(gs.r_omega >= g.r_omega - std::abs(rho) - 1e-9);
}

TEST_CASE("cutoff eta: values, bounds and support") {
  auto disk = shapes::disk_boundary(1.0, 64);
  BoundaryProximity prox(disk);
  auto g = ubc_radius(disk);
  CutoffProfile phi;

  // d = 0: eta = 1, d_nu eta = 0
  auto v0 = cutoff_eta(g, phi, prox, Vec2(1.0, 0.0));
  CHECK(v0.eta == doctest::Approx(1.0));
  CHECK(v0.d_nu == 0.0);

  // |d| >= r/2: eta = 0  (point at distance 0.5 inside: d = -0.5 = -r/2)
  auto v1 = cutoff_eta(g, phi, prox, Vec2(0.5, 0.0));
  CHECK(v1.eta <= 1e-12);

  // |d| = 3r/8: transition midpoint, eta = 1/2
  auto v2 = cutoff_eta(g, phi, prox, Vec2(1.0 - 3.0 / 8.0, 0.0));
  CHECK(v2.eta == doctest::Approx(0.5).epsilon(1e-9));

  // derivative bounds from the stored profile constants
  for (double d = -0.49; d < 0.49; d += 0.01) {
    auto v = cutoff_eta(g, phi, prox, Vec2(1.0 - d, 0.0));
    CHECK(std::abs(v.d_nu) <= phi.bound_d1() / g.r_omega + 1e-12);
    CHECK(std::abs(v.d_nu2) <= phi.bound_d2() / (g.r_omega * g.r_omega) + 1e-12);
    CHECK(v.eta >= 0.0);
    CHECK(v.eta <= 1.0);
  }
}

TEST_CASE("extended frame: disk and annulus closed forms") {
  auto disk = shapes::disk_boundary(1.0, 128);
  BoundaryProximity prox(disk);
  auto g = ubc_radius(disk);
  // unit disk, point (0.5, 0): div nu = 1/|x| = 2
  auto f = extended_frame(g, prox, Vec2(0.5, 0.0));
  CHECK(f.nu.x() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f.div_nu == doctest::Approx(2.0).epsilon(1e-8));

  // on the boundary: div nu = kappa
  auto fb = extended_frame(g, prox, Vec2(1.0, 0.0));
  CHECK(fb.div_nu == doctest::Approx(1.0).epsilon(1e-9));

  auto ann = shapes::annulus_boundary(1.0, 2.0, 128);
  BoundaryProximity prox2(ann);
  auto g2 = ubc_radius(ann);
  // point (1.2, 0): nearest inner ring, d = -0.2 (inside Omega), kappa = -1
  // div nu = -1/(1+0.2) = -5/6
  auto f2 = extended_frame(g2, prox2, Vec2(1.2, 0.0));
  CHECK(f2.distance == doctest::Approx(-0.2).epsilon(1e-9));
  CHECK(f2.div_nu == doctest::Approx(-5.0 / 6.0).epsilon(1e-8));

  // outside the tube: reject
  CHECK_THROWS(extended_frame(g2, prox2, Vec2(2.6, 0.0)));
}

TEST_CASE("extended frame: d_nu(div nu) = -(div nu)^2 along normals") {
  auto ell = shapes::ellipse_boundary(2.0, 1.0, 256);
  BoundaryProximity prox(ell);
  auto g = ubc_radius(ell);
  const double h = 1e-5;
  for (double s : {0.3, 1.1, 2.4}) {
    // pick a boundary point and walk inward along the normal
    auto pr = prox.project(Vec2(2.0 * std::cos(s), 1.0 * std::sin(s)));
    const Vec2 base = pr.point - 0.15 * pr.normal;
    auto fm = extended_frame(g, prox, base - h * pr.normal);
    auto f0 = extended_frame(g, prox, base);
    auto fp = extended_frame(g, prox, base + h * pr.normal);
    const double fd = (fp.div_nu - fm.div_nu) / (2 * h);
    CHECK(fd == doctest::Approx(-f0.div_nu * f0.div_nu).epsilon(1e-5));
  }
}

TEST_CASE("Lipschitz normal bound |nu(x)-nu(y)| <= |x-y|/r on the boundary") {
  auto ell = shapes::ellipse_boundary(2.0, 1.0, 128);
  auto g = ubc_radius(ell);
  auto [nu, tau] = frame(ell);
  const auto& c = ell.components[0];
  for (int i = 0; i < c.size(); i += 3)
    for (int j = i + 1; j < c.size(); j += 7) {
      const double dn = (Vec2(nu.comp[0](i, 0), nu.comp[0](i, 1)) -
                         Vec2(nu.comp[0](j, 0), nu.comp[0](j, 1)))
                            .norm();
      const double dx = (c.node(i) - c.node(j)).norm();
      CHECK(dn <= dx / g.r_omega + 1e-9);
    }
}
