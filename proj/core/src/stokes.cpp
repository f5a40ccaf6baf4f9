#include "dropflow/stokes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "dropflow/fourier.hpp"
#include "dropflow/geometry.hpp"
#include "dropflow/quadrature.hpp"

namespace dropflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Flattened per-node data of the whole boundary.
struct NodeData {
  Eigen::ArrayX2d X, NU, TAU;
  Eigen::ArrayXd KAP, W, SP;
  std::vector<int> offsets;  // component offsets, last = total
  std::vector<Vec2> hole_centers;
  int total = 0;
};

NodeData flatten(const Boundary& boundary) {
  NodeData nd;
  int total = 0;
  nd.offsets.push_back(0);
  for (const auto& c : boundary.components) {
    total += c.size();
    nd.offsets.push_back(total);
  }
  nd.total = total;
  nd.X.resize(total, 2);
  nd.NU.resize(total, 2);
  nd.TAU.resize(total, 2);
  nd.KAP.resize(total);
  nd.W.resize(total);
  nd.SP.resize(total);
  for (std::size_t k = 0; k < boundary.components.size(); ++k) {
    const auto& c = boundary.components[k];
    const CurveFrame f = curve_frame(c);
    const int off = nd.offsets[k];
    nd.X.middleRows(off, c.size()) = c.nodes;
    nd.NU.middleRows(off, c.size()) = f.nu;
    nd.TAU.middleRows(off, c.size()) = f.tau;
    nd.KAP.segment(off, c.size()) = f.kappa;
    nd.W.segment(off, c.size()) = f.weights;
    nd.SP.segment(off, c.size()) = f.sp;
    if (k > 0) {
      // any interior point of the hole serves as source location; centroid
      nd.hole_centers.emplace_back(c.nodes.col(0).mean(), c.nodes.col(1).mean());
    }
  }
  return nd;
}

// Traction (interior limit) of the single layer at node i from density at j:
//   t(x_i) = 0.5 psi(x_i) + sum_j w_j K(x_i, y_j) psi(y_j)
//   K(x,y) = -(1/pi) (r ox r) (r . nu(x)) / |r|^4,   r = x - y,
// with the smooth diagonal limit -(kappa/2pi) tau ox tau.
Eigen::MatrixXd traction_matrix(const NodeData& nd) {
  const int n = nd.total;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const Vec2 xi(nd.X(i, 0), nd.X(i, 1));
    const Vec2 ni(nd.NU(i, 0), nd.NU(i, 1));
    for (int j = 0; j < n; ++j) {
      double kxx, kxy, kyy;
      if (j == i) {
        const double c = -nd.KAP(i) / kTwoPi;
        kxx = c * nd.TAU(i, 0) * nd.TAU(i, 0);
        kxy = c * nd.TAU(i, 0) * nd.TAU(i, 1);
        kyy = c * nd.TAU(i, 1) * nd.TAU(i, 1);
      } else {
        const Vec2 r(xi.x() - nd.X(j, 0), xi.y() - nd.X(j, 1));
        const double r2 = r.squaredNorm();
        const double f = -(1.0 / kPi) * r.dot(ni) / (r2 * r2);
        kxx = f * r.x() * r.x();
        kxy = f * r.x() * r.y();
        kyy = f * r.y() * r.y();
      }
      A(2 * i, 2 * j) += kxx * nd.W(j);
      A(2 * i, 2 * j + 1) += kxy * nd.W(j);
      A(2 * i + 1, 2 * j) += kxy * nd.W(j);
      A(2 * i + 1, 2 * j + 1) += kyy * nd.W(j);
    }
    A(2 * i, 2 * i) += 0.5;
    A(2 * i + 1, 2 * i + 1) += 0.5;
  }
  return A;
}

// Traction columns of the per-hole potential sources
// u_src = m grad ln|x-c| / (2 pi theta):  t = (m/pi) (nu - 2 e <e,nu>)/|x-c|^2.
Eigen::MatrixXd source_traction(const NodeData& nd) {
  const int H = static_cast<int>(nd.hole_centers.size());
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2 * nd.total, H);
  for (int k = 0; k < H; ++k) {
    for (int i = 0; i < nd.total; ++i) {
      const Vec2 d(nd.X(i, 0) - nd.hole_centers[k].x(),
                   nd.X(i, 1) - nd.hole_centers[k].y());
      const double d2 = d.squaredNorm();
      const Vec2 e = d / std::sqrt(d2);
      const Vec2 nu(nd.NU(i, 0), nd.NU(i, 1));
      const Vec2 tr = (nu - 2.0 * e * e.dot(nu)) / (kPi * d2);
      S(2 * i, k) = tr.x();
      S(2 * i + 1, k) = tr.y();
    }
  }
  return S;
}

// Boundary-velocity trace of the single layer, (1/(4 pi theta)) S[psi].
// Same-component blocks use the Martensen-Kussmaul split for the log kernel.
Eigen::MatrixXd velocity_matrix(const Boundary& boundary, const NodeData& nd,
                                double theta) {
  const int n = nd.total;
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const int ncomp = static_cast<int>(boundary.components.size());
  std::vector<Eigen::ArrayXd> kress;
  for (int k = 0; k < ncomp; ++k)
    kress.push_back(kress_log_weights(boundary.components[k].size()));

  for (int a = 0; a < ncomp; ++a) {
    const int na = nd.offsets[a + 1] - nd.offsets[a];
    for (int b = 0; b < ncomp; ++b) {
      const int nb = nd.offsets[b + 1] - nd.offsets[b];
      for (int ii = 0; ii < na; ++ii) {
        const int I = nd.offsets[a] + ii;
        const Vec2 xi(nd.X(I, 0), nd.X(I, 1));
        for (int jj = 0; jj < nb; ++jj) {
          const int J = nd.offsets[b] + jj;
          double gxx, gxy, gyy;
          const double wj = nd.W(J);
          if (a == b) {
            double lnsmooth, ex, ey;
            if (ii == jj) {
              lnsmooth = std::log(nd.SP(J));
              ex = nd.TAU(J, 0);
              ey = nd.TAU(J, 1);
            } else {
              const Vec2 r(xi.x() - nd.X(J, 0), xi.y() - nd.X(J, 1));
              const double r2 = r.squaredNorm();
              const double dt = kTwoPi * (ii - jj) / nb;
              const double s2 = 4.0 * std::sin(dt / 2) * std::sin(dt / 2);
              lnsmooth = 0.5 * std::log(r2 / s2);
              const double rn = std::sqrt(r2);
              ex = r.x() / rn;
              ey = r.y() / rn;
            }
            // -ln|r| = -(1/2) ln(4 sin^2((t-s)/2)) - lnsmooth
            const int shift = ((ii - jj) % nb + nb) % nb;
            const double logpart = -0.5 * kress[a](shift) * nd.SP(J);
            gxx = logpart - lnsmooth * wj + ex * ex * wj;
            gxy = ex * ey * wj;
            gyy = logpart - lnsmooth * wj + ey * ey * wj;
          } else {
            const Vec2 r(xi.x() - nd.X(J, 0), xi.y() - nd.X(J, 1));
            const double r2 = r.squaredNorm();
            const double ln = 0.5 * std::log(r2);
            const double rn = std::sqrt(r2);
            const double ex = r.x() / rn, ey = r.y() / rn;
            gxx = (-ln + ex * ex) * wj;
            gxy = (ex * ey) * wj;
            gyy = (-ln + ey * ey) * wj;
          }
          V(2 * I, 2 * J) += gxx;
          V(2 * I, 2 * J + 1) += gxy;
          V(2 * I + 1, 2 * J) += gxy;
          V(2 * I + 1, 2 * J + 1) += gyy;
        }
      }
    }
  }
  return V / (4.0 * kPi * theta);
}

Eigen::MatrixXd source_velocity(const NodeData& nd, double theta) {
  const int H = static_cast<int>(nd.hole_centers.size());
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2 * nd.total, H);
  for (int k = 0; k < H; ++k) {
    for (int i = 0; i < nd.total; ++i) {
      const Vec2 d(nd.X(i, 0) - nd.hole_centers[k].x(),
                   nd.X(i, 1) - nd.hole_centers[k].y());
      const Vec2 u = d / (kTwoPi * d.squaredNorm() * theta);
      S(2 * i, k) = u.x();
      S(2 * i + 1, k) = u.y();
    }
  }
  return S;
}

// Rigid velocity fields (two translations, one rotation) sampled at nodes.
Eigen::MatrixXd rigid_fields(const NodeData& nd) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(2 * nd.total, 3);
  for (int i = 0; i < nd.total; ++i) {
    R(2 * i, 0) = 1.0;
    R(2 * i + 1, 1) = 1.0;
    R(2 * i, 2) = -nd.X(i, 1);
    R(2 * i + 1, 2) = nd.X(i, 0);
  }
  return R;
}

// Moment functionals as row vectors acting on boundary-velocity dofs:
// int_Omega u_i dx = int x_i <u,nu> dH^1 ;  int curl u = int (u2 nu1 - u1 nu2).
Eigen::MatrixXd moment_rows(const NodeData& nd) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(3, 2 * nd.total);
  for (int i = 0; i < nd.total; ++i) {
    const double w = nd.W(i);
    M(0, 2 * i) = nd.X(i, 0) * nd.NU(i, 0) * w;
    M(0, 2 * i + 1) = nd.X(i, 0) * nd.NU(i, 1) * w;
    M(1, 2 * i) = nd.X(i, 1) * nd.NU(i, 0) * w;
    M(1, 2 * i + 1) = nd.X(i, 1) * nd.NU(i, 1) * w;
    M(2, 2 * i) = -nd.NU(i, 1) * w;
    M(2, 2 * i + 1) = nd.NU(i, 0) * w;
  }
  return M;
}

BoundaryField split_field(const Boundary& boundary, const Eigen::VectorXd& flat,
                          int cols) {
  BoundaryField f;
  int off = 0;
  for (const auto& c : boundary.components) {
    Eigen::ArrayXXd block(c.size(), cols);
    for (int i = 0; i < c.size(); ++i)
      for (int d = 0; d < cols; ++d) block(i, d) = flat(2 * (off + i) + d);
    f.comp.push_back(block);
    off += c.size();
  }
  return f;
}

}  // namespace

Eigen::ArrayXd kress_log_weights(int n) {
  Eigen::ArrayXd R(n);
  for (int j = 0; j < n; ++j) {
    const double d = kTwoPi * j / n;
    double acc = 0.0;
    for (int m = 1; m < n / 2; ++m) acc += (2.0 / m) * std::cos(m * d);
    acc += (2.0 / n) * std::cos(n * d / 2.0);
    R(j) = -(kTwoPi / n) * acc;
  }
  return R;
}

FluidSolution solve_stokes(const Boundary& boundary, double theta,
                           const StokesOptions& opts) {
  if (theta <= 0) throw std::invalid_argument("solve_stokes: theta must be positive");
  const NodeData nd = flatten(boundary);
  const int n = nd.total;
  const int H = static_cast<int>(nd.hole_centers.size());

  const Eigen::MatrixXd A = traction_matrix(nd);
  const Eigen::MatrixXd St = source_traction(nd);
  const Eigen::MatrixXd V = velocity_matrix(boundary, nd, theta);
  const Eigen::MatrixXd Sv = source_velocity(nd, theta);
  const Eigen::MatrixXd Rg = rigid_fields(nd);
  const Eigen::MatrixXd M = moment_rows(nd);

  // unknowns: psi (2n), m (H), alpha (3), beta (3)
  const int nunk = 2 * n + H + 6;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nunk, nunk);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nunk);

  B.topLeftCorner(2 * n, 2 * n) = A;
  if (H) B.block(0, 2 * n, 2 * n, H) = St;
  B.block(0, 2 * n + H + 3, 2 * n, 3) = Rg;  // cokernel completion columns

  for (int i = 0; i < n; ++i) {
    rhs(2 * i) = -nd.KAP(i) * nd.NU(i, 0);  // sigma.nu = -kappa nu
    rhs(2 * i + 1) = -nd.KAP(i) * nd.NU(i, 1);
  }

  // moment rows
  B.block(2 * n, 0, 3, 2 * n) = M * V;
  if (H) B.block(2 * n, 2 * n, 3, H) = M * Sv;
  B.block(2 * n, 2 * n + H, 3, 3) = M * Rg;

  // closure rows: hole-flux components of psi vanish, rigid components vanish
  int row = 2 * n + 3;
  for (int k = 1; k <= H; ++k, ++row) {
    for (int i = nd.offsets[k]; i < nd.offsets[k + 1]; ++i) {
      B(row, 2 * i) = nd.NU(i, 0) * nd.W(i);
      B(row, 2 * i + 1) = nd.NU(i, 1) * nd.W(i);
    }
  }
  for (int j = 0; j < 3; ++j, ++row) {
    for (int i = 0; i < n; ++i) {
      B(row, 2 * i) = Rg(2 * i, j) * nd.W(i);
      B(row, 2 * i + 1) = Rg(2 * i + 1, j) * nd.W(i);
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
  const double rc = lu.rcond();
  if (!(rc > opts.rcond_min)) {
    throw std::runtime_error("solve_stokes: bordered system numerically singular (rcond=" +
                             std::to_string(rc) + ")");
  }
  const Eigen::VectorXd sol = lu.solve(rhs);

  const Eigen::VectorXd psi = sol.head(2 * n);
  const Eigen::VectorXd m = sol.segment(2 * n, H);
  const Eigen::Vector3d alpha = sol.segment(2 * n + H, 3);
  const Eigen::Vector3d beta = sol.tail(3);

  // a-posteriori traction residual, beta excluded (it absorbs only the
  // quadrature-level incompatibility of the data)
  Eigen::VectorXd tres = A * psi - rhs.head(2 * n);
  if (H) tres += St * m;
  double res = tres.lpNorm<Eigen::Infinity>();
  res = std::max(res, beta.lpNorm<Eigen::Infinity>());
  if (!(res <= opts.tol)) {
    throw std::runtime_error("solve_stokes: traction residual " + std::to_string(res) +
                             " exceeds tolerance at this resolution");
  }

  Eigen::VectorXd ub = V * psi + Rg * alpha;
  if (H) ub += Sv * m;

  FluidSolution out;
  out.theta = theta;
  out.boundary_velocity = split_field(boundary, ub, 2);
  out.layer_density = split_field(boundary, psi, 2);
  out.source_strengths.assign(m.data(), m.data() + H);
  out.rigid_coefficients = alpha;
  out.traction_residual = res;
  out.rcond = rc;

  // normal velocity and pressure trace p = kappa + 2 theta div_nu u,
  // div_nu u = -<d_tau u, tau>  (incompressibility)
  out.normal_velocity = BoundaryField::scalar(boundary.component_sizes());
  out.pressure_trace = BoundaryField::scalar(boundary.component_sizes());
  for (std::size_t k = 0; k < boundary.components.size(); ++k) {
    const auto& c = boundary.components[k];
    const CurveFrame f = curve_frame(c);
    const Eigen::ArrayXd ux = out.boundary_velocity.comp[k].col(0);
    const Eigen::ArrayXd uy = out.boundary_velocity.comp[k].col(1);
    out.normal_velocity.comp[k].col(0) = ux * f.nu.col(0) + uy * f.nu.col(1);
    const Eigen::ArrayXd dux = fourier::derivative(ux, 1) / f.sp;
    const Eigen::ArrayXd duy = fourier::derivative(uy, 1) / f.sp;
    const Eigen::ArrayXd dtau_u_tau = dux * f.tau.col(0) + duy * f.tau.col(1);
    out.pressure_trace.comp[k].col(0) = f.kappa - 2.0 * theta * dtau_u_tau;
  }

  // re-measure the moment functionals
  const Eigen::Vector3d mom = M * ub;
  out.moment_residual = mom.lpNorm<Eigen::Infinity>();
  return out;
}

StokesEvaluator::StokesEvaluator(const FluidSolution& sol, const Boundary& boundary) {
  const NodeData nd = flatten(boundary);
  X_ = nd.X;
  W_ = nd.W;
  hole_centers_ = nd.hole_centers;
  source_strengths_ = sol.source_strengths;
  rigid_ = sol.rigid_coefficients;
  theta_ = sol.theta;
  psi_.resize(2 * nd.total);
  int off = 0;
  for (const auto& blk : sol.layer_density.comp) {
    for (int i = 0; i < blk.rows(); ++i) {
      psi_(2 * (off + i)) = blk(i, 0);
      psi_(2 * (off + i) + 1) = blk(i, 1);
    }
    off += static_cast<int>(blk.rows());
  }
}

InteriorEval StokesEvaluator::operator()(const Vec2& z) const {
  InteriorEval ev;
  const double theta = theta_;
  const auto& psi = psi_;
  struct NodeView {
    const Eigen::ArrayX2d& X;
    const Eigen::ArrayXd& W;
    const std::vector<Vec2>& hole_centers;
    int total;
  } nd{X_, W_, hole_centers_, static_cast<int>(X_.rows())};
  Vec2 u = Vec2::Zero();
  Mat2 gu = Mat2::Zero();
  Tensor3 hu{Mat2::Zero(), Mat2::Zero()};
  double p = 0.0;
  for (int j = 0; j < nd.total; ++j) {
    const Vec2 q(psi(2 * j), psi(2 * j + 1));
    const Vec2 r(z.x() - nd.X(j, 0), z.y() - nd.X(j, 1));
    const double r2 = r.squaredNorm();
    const double r4 = r2 * r2, r6 = r4 * r2;
    const double w = nd.W(j);
    const double ln = 0.5 * std::log(r2);
    const double rq = r.dot(q);
    // velocity kernel G q
    u += w * (-ln * q + r * (rq / r2));
    // gradient: d_k [G q]_i = -q_i r_k/r2 + (q_k r_i + rq delta_ik)/r2
    //           - 2 r_i r_k rq / r2^2
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        const double dik = (i == k) ? 1.0 : 0.0;
        gu(i, k) += w * (-q(i) * r(k) / r2 + (q(k) * r(i) + rq * dik) / r2 -
                         2.0 * r(i) * r(k) * rq / r4);
        for (int l = 0; l < 2; ++l) {
          const double dil = (i == l) ? 1.0 : 0.0;
          const double dkl = (k == l) ? 1.0 : 0.0;
          double t = -q(i) * (dkl / r2 - 2.0 * r(k) * r(l) / r4);
          t += (q(k) * dil + q(l) * dik) / r2 -
               2.0 * (q(k) * r(i) + rq * dik) * r(l) / r4;
          t += -2.0 * (dil * r(k) * rq + r(i) * dkl * rq + r(i) * r(k) * q(l)) / r4 +
               8.0 * r(i) * r(k) * r(l) * rq / r6;
          hu[i](k, l) += w * t;
        }
      }
    p += w * rq / r2;
  }
  const double scale = 1.0 / (4.0 * kPi * theta);
  u *= scale;
  gu *= scale;
  hu[0] *= scale;
  hu[1] *= scale;
  p /= kTwoPi;
  // sources
  for (std::size_t k = 0; k < nd.hole_centers.size(); ++k) {
    const double m = source_strengths_[k] / (kTwoPi * theta);
    const Vec2 r = z - nd.hole_centers[k];
    const double r2 = r.squaredNorm();
    const double r4 = r2 * r2, r6 = r4 * r2;
    u += m * r / r2;
    gu += m * (Mat2::Identity() / r2 - 2.0 * (r * r.transpose()) / r4);
    for (int i = 0; i < 2; ++i)
      for (int kk = 0; kk < 2; ++kk)
        for (int l = 0; l < 2; ++l) {
          const double dik = (i == kk) ? 1.0 : 0.0;
          const double dil = (i == l) ? 1.0 : 0.0;
          const double dkl = (kk == l) ? 1.0 : 0.0;
          hu[i](kk, l) += m * (-2.0 * (dik * r(l) + dil * r(kk) + dkl * r(i)) / r4 +
                               8.0 * r(i) * r(kk) * r(l) / r6);
        }
  }
  // rigid completion
  const Eigen::Vector3d a = rigid_;
  u += Vec2(a(0), a(1)) + a(2) * Vec2(-z.y(), z.x());
  gu(0, 1) += -a(2);
  gu(1, 0) += a(2);

  ev.u = u;
  ev.grad_u = gu;
  ev.hess_u = hu;
  ev.p = p;
  return ev;
}

InteriorEval evaluate_point_unchecked(const FluidSolution& sol, const Boundary& boundary,
                                      const Vec2& z) {
  return StokesEvaluator(sol, boundary)(z);
}

std::vector<InteriorEval> evaluate_interior(const FluidSolution& sol,
                                            const Boundary& boundary,
                                            const std::vector<Vec2>& points,
                                            std::optional<double> near_band) {
  BoundaryProximity prox(boundary);
  const double band = near_band.value_or(2.0 * prox.min_node_spacing());
  const StokesEvaluator eval(sol, boundary);
  std::vector<InteriorEval> out;
  out.reserve(points.size());
  for (const auto& z : points) {
    const double d = prox.signed_distance(z);
    if (d > -band)
      throw std::invalid_argument(
          "evaluate_interior: point outside Omega or inside the near-boundary band");
    out.push_back(eval(z));
  }
  return out;
}

BoundaryField boundary_sym_grad_sq(const FluidSolution& sol, const Boundary& boundary) {
  // In the (nu, tau) frame on the boundary:
  //   <d_tau u, tau> and <d_tau u, nu> from the trace;
  //   <d_nu u, nu> = -<d_tau u, tau> (div u = 0);
  //   <d_nu u, tau> = -<d_tau u, nu> (zero tangential traction).
  // |sym grad u|^2 = 2 <d_tau u, tau>^2 + (1/2)(<d_nu u,tau> + <d_tau u,nu>)^2
  // and the mixed term vanishes, leaving 2 a^2 with a = <d_tau u, tau>.
  BoundaryField out = BoundaryField::scalar(boundary.component_sizes());
  for (std::size_t k = 0; k < boundary.components.size(); ++k) {
    const auto& c = boundary.components[k];
    const CurveFrame f = curve_frame(c);
    const Eigen::ArrayXd ux = sol.boundary_velocity.comp[k].col(0);
    const Eigen::ArrayXd uy = sol.boundary_velocity.comp[k].col(1);
    const Eigen::ArrayXd dux = fourier::derivative(ux, 1) / f.sp;
    const Eigen::ArrayXd duy = fourier::derivative(uy, 1) / f.sp;
    const Eigen::ArrayXd a = dux * f.tau.col(0) + duy * f.tau.col(1);
    out.comp[k].col(0) = 2.0 * a.square();
  }
  return out;
}

DissipationResult dissipation(const FluidSolution& sol, const Boundary& boundary,
                              bool cross_check, double cross_tol) {
  DissipationResult r;
  double acc = 0.0;
  for (std::size_t k = 0; k < boundary.components.size(); ++k) {
    const CurveFrame f = curve_frame(boundary.components[k]);
    acc -= (f.kappa * sol.normal_velocity.comp[k].col(0).array() * f.weights).sum();
  }
  r.boundary_route = acc;
  if (!cross_check) return r;

  BoundaryProximity prox(boundary);
  double h_max = 0.0;
  for (const auto& c : boundary.components) h_max = std::max(h_max, curve_frame(c).h_max);
  // midpoint of the Simpson collar sits one max-spacing off every wall
  const double band = 2.0 * h_max;
  GridQuadrature grid(prox, band / 3.0);
  const StokesEvaluator eval(sol, boundary);
  auto symsq = [&](const Vec2& z) {
    const auto ev = eval(z);
    const Mat2 s = 0.5 * (ev.grad_u + ev.grad_u.transpose());
    return 2.0 * sol.theta * s.squaredNorm();
  };
  double bulk = grid.integrate(symsq, -std::numeric_limits<double>::infinity(), -band);

  // collar strip: per-node Simpson rule along the inward normal; endpoint at
  // d = 0 from the boundary trace, midpoint and inner endpoint from layer
  // potentials (the midpoint at d = -band/2 is one spacing off the wall,
  // where the plain quadrature is still usable at cross-check accuracy)
  const BoundaryField strace = boundary_sym_grad_sq(sol, boundary);
  double collar = 0.0;
  for (std::size_t k = 0; k < boundary.components.size(); ++k) {
    const auto& c = boundary.components[k];
    const CurveFrame f = curve_frame(c);
    for (int i = 0; i < c.size(); ++i) {
      const Vec2 x = c.node(i);
      const Vec2 nu(f.nu(i, 0), f.nu(i, 1));
      auto value_at = [&](double depth) {
        const auto ev = eval(x - depth * nu);
        const Mat2 s = 0.5 * (ev.grad_u + ev.grad_u.transpose());
        return 2.0 * sol.theta * s.squaredNorm();
      };
      const double f0 = 2.0 * sol.theta * strace.comp[k](i, 0);
      const double fm = value_at(band / 2.0);
      const double f1 = value_at(band);
      // int_{-band}^{0} f (1 + d kappa) dd, Simpson with the area Jacobian
      const double j0 = 1.0;
      const double jm = 1.0 - 0.5 * band * f.kappa(i);
      const double j1 = 1.0 - band * f.kappa(i);
      collar += band / 6.0 * (f0 * j0 + 4.0 * fm * jm + f1 * j1) * f.weights(i);
    }
  }
  r.interior_route = bulk + collar;
  r.cross_checked = true;
  r.relative_gap =
      std::abs(r.interior_route - r.boundary_route) / std::max(1.0, std::abs(r.boundary_route));
  if (r.relative_gap > cross_tol)
    throw std::runtime_error("dissipation: boundary and interior routes disagree (gap " +
                             std::to_string(r.relative_gap) + ")");
  return r;
}

MomentFunctionals moment_functionals(const FluidSolution& sol, const Boundary& boundary) {
  MomentFunctionals m;
  for (std::size_t k = 0; k < boundary.components.size(); ++k) {
    const CurveFrame f = curve_frame(boundary.components[k]);
    const auto& c = boundary.components[k];
    const Eigen::ArrayXd ux = sol.boundary_velocity.comp[k].col(0);
    const Eigen::ArrayXd uy = sol.boundary_velocity.comp[k].col(1);
    const Eigen::ArrayXd un = ux * f.nu.col(0) + uy * f.nu.col(1);
    m.mean_velocity.x() += (c.nodes.col(0) * un * f.weights).sum();
    m.mean_velocity.y() += (c.nodes.col(1) * un * f.weights).sum();
    m.net_rotation += ((uy * f.nu.col(0) - ux * f.nu.col(1)) * f.weights).sum();
  }
  return m;
}

}  // namespace dropflow
