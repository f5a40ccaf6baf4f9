#include "dropflow/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dropflow/fourier.hpp"

namespace dropflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

BoundaryProximity::BoundaryProximity(const Boundary& boundary) : boundary_(boundary) {
  h_min_ = std::numeric_limits<double>::max();
  for (const auto& c : boundary_.components) {
    frames_.push_back(curve_frame(c));
    interps_.emplace_back(c);
    const auto& f = frames_.back();
    kappa_spec_.push_back(f.kappa);
    dkappa_spec_.push_back(fourier::derivative(f.kappa, 1) / f.sp);
    dkappa_coeff_.push_back(fourier::forward(dkappa_spec_.back()));
    h_min_ = std::min(h_min_, f.h_min);
  }
}

BoundaryProximity::PolylineHit BoundaryProximity::nearest_polyline(const Vec2& q) const {
  PolylineHit hit;
  double best = std::numeric_limits<double>::max();
  for (std::size_t k = 0; k < boundary_.components.size(); ++k) {
    const auto& c = boundary_.components[k];
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
      const Vec2 a = c.node(i), b = c.node((i + 1) % n);
      const Vec2 ab = b - a;
      double s = (q - a).dot(ab) / ab.squaredNorm();
      s = std::clamp(s, 0.0, 1.0);
      const double d = (q - (a + s * ab)).norm();
      if (d < best) {
        best = d;
        hit.comp = static_cast<int>(k);
        hit.t_seed = kTwoPi * (i + s) / n;
        hit.distance = d;
      }
    }
  }
  return hit;
}

BoundaryProximity::Projection BoundaryProximity::refine(const Vec2& q, int comp,
                                                        double t_seed) const {
  const auto& interp = interps_[comp];
  const int n = boundary_.components[comp].size();
  double t = t_seed;
  // Newton on g(t) = <gamma(t) - q, gamma'(t)> = 0
  for (int it = 0; it < 30; ++it) {
    const Vec2 p = interp.position(t);
    const Vec2 d1 = interp.derivative(t, 1);
    const Vec2 d2 = interp.derivative(t, 2);
    const double g = (p - q).dot(d1);
    const double gp = d1.squaredNorm() + (p - q).dot(d2);
    if (gp <= 0) break;  // fall back to the seed if the problem is ill-posed here
    const double step = g / gp;
    t -= step;
    if (std::abs(step) < 1e-14) break;
  }
  Projection pr;
  pr.component = comp;
  pr.param = t;
  pr.point = interp.position(t);
  const Vec2 d1 = interp.derivative(t, 1);
  const Vec2 d2 = interp.derivative(t, 2);
  const double sp = d1.norm();
  pr.tangent = d1 / sp;
  pr.normal = Vec2(pr.tangent.y(), -pr.tangent.x());
  pr.kappa = (d1.x() * d2.y() - d1.y() * d2.x()) / (sp * sp * sp);
  // d_tau kappa via the cached spectral coefficients of the component
  pr.dkappa = fourier::evaluate(dkappa_coeff_[comp], n, t);
  const double dist = (q - pr.point).norm();
  const double side = (q - pr.point).dot(pr.normal);
  pr.distance = (side >= 0) ? dist : -dist;
  return pr;
}

BoundaryProximity::Projection BoundaryProximity::refine_guarded(const Vec2& q,
                                                                const PolylineHit& hit) const {
  const double h = frames_[hit.comp].h_max;
  const int n = boundary_.components[hit.comp].size();
  Projection pr = refine(q, hit.comp, hit.t_seed);
  if (std::abs(pr.distance) > hit.distance + 0.5 * h) {
    for (double off : {-1.0, 1.0, -2.0, 2.0}) {
      const Projection alt = refine(q, hit.comp, hit.t_seed + off * kTwoPi / n);
      if (std::abs(alt.distance) < std::abs(pr.distance)) pr = alt;
    }
  }
  if (std::abs(pr.distance) > hit.distance + 0.5 * h) {
    // Newton drifted: fall back to the frame at the polyline seed parameter
    pr = refine(q, hit.comp, hit.t_seed);
    Projection seed;
    seed.component = hit.comp;
    seed.param = hit.t_seed;
    const auto& interp = interps_[hit.comp];
    seed.point = interp.position(hit.t_seed);
    const Vec2 d1 = interp.derivative(hit.t_seed, 1);
    const Vec2 d2 = interp.derivative(hit.t_seed, 2);
    const double sp = d1.norm();
    seed.tangent = d1 / sp;
    seed.normal = Vec2(seed.tangent.y(), -seed.tangent.x());
    seed.kappa = (d1.x() * d2.y() - d1.y() * d2.x()) / (sp * sp * sp);
    seed.dkappa = fourier::evaluate(dkappa_coeff_[hit.comp], n, hit.t_seed);
    const double dist = (q - seed.point).norm();
    const double side = (q - seed.point).dot(seed.normal);
    seed.distance = (side >= 0) ? dist : -dist;
    if (std::abs(seed.distance) < std::abs(pr.distance)) pr = seed;
  }
  return pr;
}

BoundaryProximity::Projection BoundaryProximity::project(const Vec2& q) const {
  // the side of the refined nearest point fixes the sign (the polyline parity
  // misclassifies the sagitta strip between polyline and interpolant)
  return refine_guarded(q, nearest_polyline(q));
}

bool BoundaryProximity::inside(const Vec2& q) const {
  if (!point_in_polygon(boundary_.components.front(), q)) return false;
  for (std::size_t k = 1; k < boundary_.components.size(); ++k)
    if (point_in_polygon(boundary_.components[k], q)) return false;
  return true;
}

double BoundaryProximity::signed_distance(const Vec2& q, double refine_band) const {
  // polyline distance as Newton seed, then refine on the interpolant
  const PolylineHit hit = nearest_polyline(q);
  if (hit.distance > refine_band) return inside(q) ? -hit.distance : hit.distance;
  // The polyline cuts corners (underestimates by up to the sagitta); the
  // refined value is a distance to an actual interpolant point. Its side
  // determines the sign.
  return refine_guarded(q, hit).distance;
}

DomainGeometry ubc_radius(const Boundary& boundary) {
  DomainGeometry g;
  std::vector<CurveFrame> frames;
  int total = 0;
  for (const auto& c : boundary.components) {
    frames.push_back(curve_frame(c));
    total += c.size();
  }
  Eigen::ArrayX2d X(total, 2), NU(total, 2);
  Eigen::ArrayXd KAP(total);
  double h_max = 0.0;
  {
    int off = 0;
    for (std::size_t k = 0; k < boundary.components.size(); ++k) {
      const int n = boundary.components[k].size();
      X.middleRows(off, n) = boundary.components[k].nodes;
      NU.middleRows(off, n) = frames[k].nu;
      KAP.segment(off, n) = frames[k].kappa;
      h_max = std::max(h_max, frames[k].h_max);
      off += n;
    }
  }
  g.kappa_max = KAP.abs().maxCoeff();

  // rolling-ball pair scan: r = |y-x|^2 / (2 |<y-x, nu(x)>|)
  double r_pairs = std::numeric_limits<double>::max();
  int best_i = -1, best_j = -1;
  for (int i = 0; i < total; ++i) {
    const Vec2 xi(X(i, 0), X(i, 1));
    const Vec2 ni(NU(i, 0), NU(i, 1));
    for (int j = 0; j < total; ++j) {
      if (j == i) continue;
      const Vec2 d(X(j, 0) - xi.x(), X(j, 1) - xi.y());
      const double dn = std::abs(d.dot(ni));
      if (dn < 1e-14) continue;
      const double r = d.squaredNorm() / (2.0 * dn);
      if (r < r_pairs) {
        r_pairs = r;
        best_i = i;
        best_j = j;
      }
    }
  }
  const double r_curv = 1.0 / g.kappa_max;
  g.r_omega = std::min(r_pairs, r_curv);
  g.resolution_floor = 2.0 * h_max;
  g.degenerate = g.r_omega < g.resolution_floor;

  const double tol = 0.05 * g.r_omega + 4.0 * h_max * h_max * g.kappa_max;
  g.curvature_limited = (g.r_omega * g.kappa_max > 1.0 - tol);
  if (!g.curvature_limited && best_i >= 0) {
    DomainGeometry::Neck neck;
    neck.x = Vec2(X(best_i, 0), X(best_i, 1));
    neck.y = Vec2(X(best_j, 0), X(best_j, 1));
    neck.separation = (neck.y - neck.x).norm();
    g.neck = neck;
  }
  return g;
}

double CutoffProfile::value(double s) const {
  const double a = std::abs(s);
  if (a <= 0.25) return 1.0;
  if (a >= 0.5) return 0.0;
  const double x = (a - 0.25) * 4.0;
  const double sm = x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  return 1.0 - sm;
}

double CutoffProfile::deriv1(double s) const {
  const double a = std::abs(s);
  if (a <= 0.25 || a >= 0.5) return 0.0;
  const double x = (a - 0.25) * 4.0;
  const double smp = 30.0 * x * x * (1.0 - x) * (1.0 - x);
  return -4.0 * smp * (s >= 0 ? 1.0 : -1.0);
}

double CutoffProfile::deriv2(double s) const {
  const double a = std::abs(s);
  if (a <= 0.25 || a >= 0.5) return 0.0;
  const double x = (a - 0.25) * 4.0;
  const double smpp = 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
  return -16.0 * smpp;
}

CutoffValues cutoff_eta_at(const DomainGeometry& geom, const CutoffProfile& profile,
                           double signed_dist) {
  const double r = geom.r_omega;
  CutoffValues v;
  const double s = signed_dist / r;
  v.eta = profile.value(s);
  v.d_nu = profile.deriv1(s) / r;
  v.d_nu2 = profile.deriv2(s) / (r * r);
  return v;
}

CutoffValues cutoff_eta(const DomainGeometry& geom, const CutoffProfile& profile,
                        const BoundaryProximity& prox, const Vec2& point) {
  return cutoff_eta_at(geom, profile, prox.signed_distance(point));
}

ExtendedFrame extended_frame(const DomainGeometry& geom, const BoundaryProximity& prox,
                             const Vec2& point) {
  const auto pr = prox.project(point);
  if (std::abs(pr.distance) >= geom.r_omega)
    throw std::invalid_argument("extended_frame: point outside the tubular neighborhood");
  ExtendedFrame f;
  f.distance = pr.distance;
  f.projection = pr.point;
  f.nu = pr.normal;
  f.tau = pr.tangent;
  const double denom = 1.0 + pr.distance * pr.kappa;
  f.div_nu = pr.kappa / denom;
  f.dtau_div_nu = pr.dkappa / (denom * denom * denom);
  return f;
}

}  // namespace dropflow
