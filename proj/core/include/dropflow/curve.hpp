#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dropflow {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Derivative tensors: Tensor3[i](j,k) = d_j d_k X_i,
// Tensor4[i][j](k,l) = d_j d_k d_l X_i.
using Tensor3 = std::array<Mat2, 2>;
using Tensor4 = std::array<std::array<Mat2, 2>, 2>;

// One discretized closed component of the boundary. Nodes are stored at
// uniform parameter values t_j = 2pi j / N of an (implicit) smooth closed
// parametrization; after resample() the parameter is arclength.
//
// Orientation convention: the stored traversal always yields the
// outward-from-Omega normal via nu = (tau_2, -tau_1). Outer components are
// counterclockwise, hole components clockwise.
struct ClosedCurve {
  Eigen::ArrayX2d nodes;
  bool is_hole = false;

  int size() const { return static_cast<int>(nodes.rows()); }
  Vec2 node(int i) const { return Vec2(nodes(i, 0), nodes(i, 1)); }
};

constexpr int kMinNodes = 16;
constexpr double kMaxSpacingRatio = 3.0;

// Scalar or 2-vector samples aligned with a Boundary (one block per component).
struct BoundaryField {
  std::vector<Eigen::ArrayXXd> comp;  // rows = nodes, cols = 1 or 2

  static BoundaryField scalar(const std::vector<int>& sizes);
  static BoundaryField vector2(const std::vector<int>& sizes);
};

// The full boundary of Omega: exactly one outer component first, then holes.
struct Boundary {
  std::vector<ClosedCurve> components;

  std::vector<int> component_sizes() const;
  int total_nodes() const;

  // Throws std::invalid_argument on violated invariants (node count,
  // orientation/containment structure, positive area, simplicity).
  void validate() const;
};

// Cached spectral data of one curve: tangent/normal frame, curvature and
// arclength quadrature weights at the nodes. |gamma'| is w.r.t. the uniform
// parameter t in [0, 2pi).
struct CurveFrame {
  Eigen::ArrayXd sp;        // |gamma'(t_j)|
  Eigen::ArrayX2d tau;      // unit tangent
  Eigen::ArrayX2d nu;       // outward unit normal, nu = (tau2, -tau1)
  Eigen::ArrayXd kappa;     // signed curvature (circle: +1/R, hole ring: -1/R)
  Eigen::ArrayXd weights;   // arclength quadrature weights (2pi/N * sp)
  double length = 0.0;
  double h_min = 0.0, h_max = 0.0;  // node spacings (chord lengths)
};

CurveFrame curve_frame(const ClosedCurve& curve);

// Equidistribute N nodes in arclength along the trigonometric interpolant.
// Preserves orientation and perimeter to interpolation accuracy.
// Rejects N < kMinNodes and curves whose interpolant self-intersects.
ClosedCurve resample(const ClosedCurve& curve, int n);

// Outward normal and tangent per node; |nu| = |tau| = 1, tau = (-nu2, nu1).
std::pair<BoundaryField, BoundaryField> frame(const Boundary& boundary);

// Signed curvature kappa = div_tau nu per node.
BoundaryField curvature(const Boundary& boundary);

// Arclength derivative d_tau f (componentwise for vector fields).
BoundaryField tangential_derivative(const Boundary& boundary, const BoundaryField& f);
Eigen::ArrayXd tangential_derivative(const ClosedCurve& curve, const Eigen::ArrayXd& f);

// Integral of f over the whole boundary (trapezoid in parameter; spectrally
// accurate for smooth periodic data).
double boundary_integral(const Boundary& boundary, const BoundaryField& f);

struct PerimeterArea {
  double perimeter = 0.0;
  double area = 0.0;
};
// Perimeter and enclosed area (shoelace; holes subtract). Rejects area <= 0.
PerimeterArea perimeter_area(const Boundary& boundary);

struct CurvatureEnergies {
  double k_l2_sq = 0.0;   // int kappa^2 dH^1
  double dk_l2_sq = 0.0;  // int (d_tau kappa)^2 dH^1
};
CurvatureEnergies curvature_energies(const Boundary& boundary);

struct SelfIntersection {
  bool intersects = false;
  double min_distance = 0.0;        // over non-adjacent segment pairs
  int component_a = -1, node_a = -1;
  int component_b = -1, node_b = -1;
};
// Exact segment arithmetic on the polylines plus a near-touch threshold of
// one local spacing.
SelfIntersection self_intersects(const Boundary& boundary);

// Arbitrary-parameter evaluation of the trigonometric interpolant of a curve.
class CurveInterpolant {
 public:
  explicit CurveInterpolant(const ClosedCurve& curve);
  Vec2 position(double t) const;
  Vec2 derivative(double t, int order = 1) const;
  int sample_count() const { return n_; }

 private:
  int n_;
  std::vector<std::complex<double>> cx_, cy_;
};

// Whether point lies inside the closed polygon given by the curve's nodes.
bool point_in_polygon(const ClosedCurve& curve, const Vec2& point);

}  // namespace dropflow
