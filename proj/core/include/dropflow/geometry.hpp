#pragma once

#include <complex>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dropflow/curve.hpp"

namespace dropflow {

// Nearest-point and signed-distance queries against a Boundary. Far from the
// boundary the polyline distance is used; near it the query is refined by
// Newton iteration on the trigonometric interpolant.
class BoundaryProximity {
 public:
  explicit BoundaryProximity(const Boundary& boundary);

  struct Projection {
    int component = -1;
    double param = 0.0;        // parameter t on the component
    Vec2 point = Vec2::Zero();    // nearest boundary point
    Vec2 normal = Vec2::Zero();   // outward normal at the nearest point
    Vec2 tangent = Vec2::Zero();
    double kappa = 0.0;           // curvature at the nearest point
    double dkappa = 0.0;          // d_tau kappa at the nearest point
    double distance = 0.0;        // signed distance of the query point
  };

  // Signed distance: negative inside Omega, positive outside. Queries whose
  // polyline distance exceeds refine_band skip the Newton refinement on the
  // interpolant (the polyline value is returned; error O(h^2 kappa)).
  double signed_distance(const Vec2& point,
                         double refine_band = std::numeric_limits<double>::infinity()) const;

  // Full nearest-point data (always refined on the interpolant).
  Projection project(const Vec2& point) const;

  bool inside(const Vec2& point) const;

  double min_node_spacing() const { return h_min_; }

  const Boundary& boundary() const { return boundary_; }

 private:
  struct PolylineHit {
    int comp = 0;
    double t_seed = 0.0;   // fractional parameter of the nearest segment point
    double distance = 0.0; // unsigned polyline distance
  };
  PolylineHit nearest_polyline(const Vec2& point) const;
  Projection refine(const Vec2& point, int comp, double t_seed) const;
  // refine with drift guard and neighbour-seed retries
  Projection refine_guarded(const Vec2& point, const PolylineHit& hit) const;

  Boundary boundary_;
  std::vector<CurveFrame> frames_;
  std::vector<CurveInterpolant> interps_;
  std::vector<Eigen::ArrayXd> kappa_spec_;   // curvature samples per component
  std::vector<Eigen::ArrayXd> dkappa_spec_;  // d_tau kappa samples
  std::vector<std::vector<std::complex<double>>> dkappa_coeff_;
  double h_min_ = 0.0;
};

// Maximal uniform-ball-condition radius and which alternative limits it:
// either the curvature bound 1/max|kappa| or a thin neck realized by an
// antipodal pair.
struct DomainGeometry {
  double r_omega = 0.0;
  double kappa_max = 0.0;   // max |kappa| over the boundary
  bool curvature_limited = false;
  struct Neck {
    Vec2 x = Vec2::Zero(), y = Vec2::Zero();
    double separation = 0.0;
  };
  std::optional<Neck> neck;
  double resolution_floor = 0.0;  // 2 node spacings; r below this is unresolved
  bool degenerate = false;        // r_omega under the resolution floor
};

// Pairwise rolling-ball scan over the resampled polyline, capped by
// 1/max|kappa|.
DomainGeometry ubc_radius(const Boundary& boundary);

// C^2 cutoff profile phi: symmetric, 1 on [0,1/4], 0 on [1/2,inf), quintic
// smoothstep transition. Stores the exact bounds of |phi'| and |phi''|.
struct CutoffProfile {
  double value(double s) const;
  double deriv1(double s) const;
  double deriv2(double s) const;
  double bound_d1() const { return 7.5; }             // max |phi'|
  double bound_d2() const { return 160.0 / std::sqrt(3.0); }  // max |phi''|
};

struct CutoffValues {
  double eta = 0.0;
  double d_nu = 0.0;    // normal derivative
  double d_nu2 = 0.0;   // second normal derivative
};

// eta = phi(d_Omega / r_Omega) evaluated at a point (zero outside N_{r/2}).
CutoffValues cutoff_eta(const DomainGeometry& geom, const CutoffProfile& profile,
                        const BoundaryProximity& prox, const Vec2& point);
// Same, with the signed distance already known.
CutoffValues cutoff_eta_at(const DomainGeometry& geom, const CutoffProfile& profile,
                           double signed_dist);

struct ExtendedFrame {
  Vec2 nu = Vec2::Zero();   // extended normal (gradient of signed distance)
  Vec2 tau = Vec2::Zero();
  double div_nu = 0.0;      // kappa.pi / (1 + d kappa.pi)
  double dtau_div_nu = 0.0; // (d_tau kappa).pi / (1 + d kappa.pi)^3
  double distance = 0.0;
  Vec2 projection = Vec2::Zero();
};

// Extended normal/tangent frame quantities at a point of the tubular
// neighborhood; rejects points with |d| >= r_omega.
ExtendedFrame extended_frame(const DomainGeometry& geom, const BoundaryProximity& prox,
                             const Vec2& point);

}  // namespace dropflow
