#include "dropflow/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dropflow/fourier.hpp"
#include "dropflow/quadrature.hpp"
#include "dropflow/stokes.hpp"

namespace dropflow {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}  // namespace

IdentityCheckResult IdentityCheckResult::equality(std::string name, double lhs,
                                                  double rhs, double tol,
                                                  std::string resolution) {
  IdentityCheckResult r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = r.abs_residual / std::max({1e-300, std::abs(lhs), std::abs(rhs)});
  r.resolution = std::move(resolution);
  r.tolerance = tol;
  r.pass = r.abs_residual <= tol * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
  return r;
}

IdentityCheckResult IdentityCheckResult::inequality(std::string name, double lhs,
                                                    double rhs, double tol,
                                                    std::string resolution) {
  IdentityCheckResult r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::max(0.0, lhs - rhs);
  r.rel_residual = r.abs_residual / std::max(1e-300, std::abs(rhs));
  r.resolution = std::move(resolution);
  r.tolerance = tol;
  r.one_sided = true;
  r.pass = lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
  return r;
}

MonitorContext make_context(const Boundary& initial, double c_cal, bool calibrated) {
  MonitorContext ctx;
  const auto pa = perimeter_area(initial);
  ctx.P0 = pa.perimeter;
  ctx.A0 = pa.area;
  ctx.r0 = ubc_radius(initial).r_omega;
  ctx.dk0_sq = curvature_energies(initial).dk_l2_sq;
  ctx.c_cal = c_cal;
  ctx.calibrated = calibrated;
  return ctx;
}

namespace {

double envelope_at(const MonitorContext& ctx, double theta, double t) {
  const double slope = ctx.c_cal * (std::pow(ctx.P0, 21) + 1.0) / (theta * std::pow(ctx.r0, 17));
  const double arg = std::atan(ctx.dk0_sq) + slope * t;
  if (arg >= kHalfPi) return std::numeric_limits<double>::infinity();
  return std::tan(arg);
}

}  // namespace

DiagnosticsRecord report(const SimulationState& state, const ScenarioConfig& config,
                         const MonitorContext* ctx, const DiagnosticsRecord* prev,
                         bool deep) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.step_index = state.step_index;
  rec.dt = state.last_dt;

  const auto pa = perimeter_area(state.boundary);
  rec.perimeter = pa.perimeter;
  rec.area = pa.area;

  const DomainGeometry geom = ubc_radius(state.boundary);
  rec.r_ubc = geom.r_omega;
  rec.kappa_max = geom.kappa_max;
  rec.ubc_alternative =
      geom.degenerate ? "unresolved" : (geom.curvature_limited ? "curvature" : "neck");

  const auto en = curvature_energies(state.boundary);
  rec.k_l2_sq = en.k_l2_sq;
  rec.dk_l2_sq = en.dk_l2_sq;

  if (state.solution) {
    const auto d = dissipation(*state.solution, state.boundary);
    rec.dissipation = d.boundary_route;
    rec.sym_energy_l2_sq = d.boundary_route / (2.0 * config.theta);
    double vmax = 0;
    for (const auto& c : state.solution->normal_velocity.comp)
      vmax = std::max(vmax, c.col(0).abs().maxCoeff());
    rec.max_normal_speed = vmax;

    const double A0 = ctx ? ctx->A0 : rec.area;
    if (rec.k_l2_sq > 0 && rec.sym_energy_l2_sq >= 0) {
      rec.ratio_symmcontrol = config.theta * std::sqrt(std::max(0.0, rec.sym_energy_l2_sq)) *
                              std::pow(rec.r_ubc, 2.5) /
                              (A0 * rec.perimeter * std::sqrt(rec.k_l2_sq));
    }

    if (deep) {
      // interior norms on {d <= -r/4}; the boundary collar is not audited here
      BoundaryProximity prox(state.boundary);
      const StokesEvaluator eval(*state.solution, state.boundary);
      const double level = -rec.r_ubc / 4.0;
      auto norms_at = [&](double h) {
        GridQuadrature grid(prox, h);
        const double g1 = grid.integrate(
            [&](const Vec2& z) { return eval(z).grad_u.squaredNorm(); },
            -std::numeric_limits<double>::infinity(), level);
        const double g2 = grid.integrate(
            [&](const Vec2& z) {
              const auto ev = eval(z);
              return ev.hess_u[0].squaredNorm() + ev.hess_u[1].squaredNorm();
            },
            -std::numeric_limits<double>::infinity(), level);
        return std::pair<double, double>(g1, g2);
      };
      const double h = rec.r_ubc / 16.0;
      const auto [g1, g2] = norms_at(h);
      const auto [g1c, g2c] = norms_at(2.0 * h);
      rec.grad_u_l2_sq_interior = g1;
      rec.grad2_u_l2_sq_interior = g2;
      rec.interior_norm_error_estimate = std::max(std::abs(g1 - g1c), std::abs(g2 - g2c));
      rec.interior_norms_present = true;
      const double th2 = config.theta * config.theta;
      const double denom = rec.r_ubc * rec.dk_l2_sq + th2 / (rec.r_ubc * rec.r_ubc) * g1;
      if (denom > 0) rec.ratio_h2control = th2 * g2 / denom;
    }
  }

  if (ctx) {
    const double atan0 = std::atan(ctx->dk0_sq);
    rec.K0 = std::tan(0.5 * (atan0 + kHalfPi));
    const double slope_unit = (std::pow(ctx->P0, 21) + 1.0) / (config.theta * std::pow(ctx->r0, 17));
    rec.T1 = (std::atan(rec.K0) - atan0) / (ctx->c_cal * slope_unit);
    rec.Tstar = rec.T1 * std::min(1.0, std::pow(ctx->r0, 10));
    rec.growth_envelope = envelope_at(*ctx, config.theta, state.t);
    rec.dk_within_K0 = rec.dk_l2_sq <= rec.K0;
  }
  if (prev && state.t > prev->t) {
    rec.holder_quotient_prev =
        std::abs(rec.r_ubc - prev->r_ubc) / std::cbrt(state.t - prev->t);
  }
  return rec;
}

std::vector<IdentityCheckResult> check_dissipation_identity(
    const std::vector<DiagnosticsRecord>& records, double theta, double tol_interval,
    double tol_cumulative) {
  if (records.size() < 2)
    throw std::invalid_argument("check_dissipation_identity: need at least 2 records");
  std::vector<IdentityCheckResult> out;
  double cum_drop = 0.0, cum_diss = 0.0;
  double worst = 0.0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    const double dP = b.perimeter - a.perimeter;
    const double integral = -0.5 * (a.dissipation + b.dissipation) * (b.t - a.t);
    cum_drop += dP;
    cum_diss += integral;
    if (std::abs(dP) > 1e-14)
      worst = std::max(worst, std::abs(dP - integral) / std::abs(dP));
  }
  IdentityCheckResult per;
  per.name = "dissipation identity (worst interval)";
  per.lhs = worst;
  per.rhs = 0.0;
  per.abs_residual = worst;
  per.rel_residual = worst;
  per.tolerance = tol_interval;
  per.pass = worst <= tol_interval;
  per.resolution = std::to_string(records.size()) + " records";
  out.push_back(per);
  out.push_back(IdentityCheckResult::equality("dissipation identity (cumulative)", cum_drop,
                                              cum_diss,
                                              tol_cumulative / std::max(1.0, std::abs(cum_drop)),
                                              std::to_string(records.size()) + " records"));
  // normalize the cumulative check: residual relative to the total drop
  auto& c = out.back();
  c.rel_residual = c.abs_residual / std::max(1e-300, std::abs(cum_drop));
  c.pass = c.rel_residual <= tol_cumulative;
  c.tolerance = tol_cumulative;
  return out;
}

namespace {

// RK4 node transport under x' = v(x) nu(x) with the frame recomputed at every
// substage.
Boundary flow_boundary(const Boundary& bd, const PrescribedVelocity& v, double dt,
                       int substeps) {
  auto rhs = [&](const Boundary& b) {
    std::vector<Eigen::ArrayX2d> k(b.components.size());
    for (std::size_t c = 0; c < b.components.size(); ++c) {
      const CurveFrame f = curve_frame(b.components[c]);
      k[c].resize(b.components[c].size(), 2);
      for (int i = 0; i < b.components[c].size(); ++i) {
        const double vi = v(b.components[c].node(i));
        k[c](i, 0) = vi * f.nu(i, 0);
        k[c](i, 1) = vi * f.nu(i, 1);
      }
    }
    return k;
  };
  auto advance = [](const Boundary& b, const std::vector<Eigen::ArrayX2d>& k, double s) {
    Boundary out = b;
    for (std::size_t c = 0; c < b.components.size(); ++c) out.components[c].nodes += s * k[c];
    return out;
  };
  Boundary cur = bd;
  const double h = dt / substeps;
  for (int s = 0; s < substeps; ++s) {
    const auto k1 = rhs(cur);
    const auto k2 = rhs(advance(cur, k1, h / 2));
    const auto k3 = rhs(advance(cur, k2, h / 2));
    const auto k4 = rhs(advance(cur, k3, h));
    Boundary next = cur;
    for (std::size_t c = 0; c < cur.components.size(); ++c)
      next.components[c].nodes +=
          (h / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    cur = std::move(next);
  }
  return cur;
}

struct EvolutionFunctionals {
  double P = 0.0;
  Vec2 phi_nu = Vec2::Zero();
  double phi_kappa = 0.0;
  double k2 = 0.0;
  double dk2 = 0.0;
};

EvolutionFunctionals functionals_of(const Boundary& bd, const ScalarField& phi) {
  EvolutionFunctionals f;
  for (const auto& c : bd.components) {
    const CurveFrame fr = curve_frame(c);
    const int n = c.size();
    Eigen::ArrayXd phis(n);
    for (int i = 0; i < n; ++i) phis[i] = phi.value(c.node(i));
    f.P += fr.length;
    f.phi_nu.x() += (phis * fr.nu.col(0) * fr.weights).sum();
    f.phi_nu.y() += (phis * fr.nu.col(1) * fr.weights).sum();
    f.phi_kappa += (phis * fr.kappa * fr.weights).sum();
    f.k2 += (fr.kappa.square() * fr.weights).sum();
    const Eigen::ArrayXd dk = fourier::derivative(fr.kappa, 1) / fr.sp;
    f.dk2 += (dk.square() * fr.weights).sum();
  }
  return f;
}

}  // namespace

std::vector<IdentityCheckResult> check_evolution_identities(
    const Boundary& boundary, const PrescribedVelocity& v, double dt, double tol) {
  const ScalarField phi = scalar_field_by_id("quad_mix");

  // central difference of the functionals across [t-dt, t+dt]
  const Boundary plus = flow_boundary(boundary, v, dt, 8);
  const Boundary minus = flow_boundary(boundary, v, -dt, 8);
  const auto fp = functionals_of(plus, phi);
  const auto fm = functionals_of(minus, phi);

  // boundary-integral right-hand sides at the center time (X = v nu):
  //   dP/dt          = int kappa v
  //   d/dt int phi nu    = int v grad(phi)
  //   d/dt int phi kappa = int d_tau phi d_tau v + kappa v d_nu phi
  //   d/dt int kappa^2   = -int (2 kappa d_tau^2 v + kappa^3 v)
  //   d/dt int(d_tau k)^2 = -int (2 k' d_tau^3 v + 2 kappa k' d_tau(kappa v)
  //                               + 3 k'^2 kappa v),  k' = d_tau kappa
  double rhs_P = 0.0, rhs_phik = 0.0, rhs_k2 = 0.0, rhs_dk2 = 0.0;
  Vec2 rhs_phinu = Vec2::Zero();
  for (const auto& c : boundary.components) {
    const CurveFrame fr = curve_frame(c);
    const int n = c.size();
    Eigen::ArrayXd vv(n), phis(n), dnphi(n);
    Eigen::ArrayX2d gphi(n, 2);
    for (int i = 0; i < n; ++i) {
      const Vec2 x = c.node(i);
      vv[i] = v(x);
      phis[i] = phi.value(x);
      const Vec2 g = phi.grad(x);
      gphi(i, 0) = g.x();
      gphi(i, 1) = g.y();
      dnphi[i] = g.x() * fr.nu(i, 0) + g.y() * fr.nu(i, 1);
    }
    const Eigen::ArrayXd dv = fourier::derivative(vv, 1) / fr.sp;
    const Eigen::ArrayXd d2v = fourier::derivative(dv.eval(), 1) / fr.sp;
    const Eigen::ArrayXd d3v = fourier::derivative(d2v.eval(), 1) / fr.sp;
    const Eigen::ArrayXd dphi = fourier::derivative(phis, 1) / fr.sp;
    const Eigen::ArrayXd kap = fr.kappa;
    const Eigen::ArrayXd dkap = fourier::derivative(kap, 1) / fr.sp;
    const Eigen::ArrayXd dkv = fourier::derivative((kap * vv).eval(), 1) / fr.sp;

    rhs_P += (kap * vv * fr.weights).sum();
    rhs_phinu.x() += (vv * gphi.col(0) * fr.weights).sum();
    rhs_phinu.y() += (vv * gphi.col(1) * fr.weights).sum();
    rhs_phik += ((dphi * dv + kap * vv * dnphi) * fr.weights).sum();
    rhs_k2 -= ((2.0 * kap * d2v + kap.cube() * vv) * fr.weights).sum();
    rhs_dk2 -= ((2.0 * dkap * d3v + 2.0 * kap * dkap * dkv +
                 3.0 * dkap.square() * kap * vv) *
                fr.weights)
                   .sum();
  }

  const double inv2dt = 1.0 / (2.0 * dt);
  const std::string res = "N=" + std::to_string(boundary.components[0].size()) +
                          ", dt=" + std::to_string(dt);
  std::vector<IdentityCheckResult> out;
  out.push_back(IdentityCheckResult::equality("dP/dt", (fp.P - fm.P) * inv2dt, rhs_P, tol, res));
  out.push_back(IdentityCheckResult::equality(
      "d/dt int phi nu (x)", (fp.phi_nu.x() - fm.phi_nu.x()) * inv2dt, rhs_phinu.x(), tol, res));
  out.push_back(IdentityCheckResult::equality(
      "d/dt int phi nu (y)", (fp.phi_nu.y() - fm.phi_nu.y()) * inv2dt, rhs_phinu.y(), tol, res));
  out.push_back(IdentityCheckResult::equality(
      "d/dt int phi kappa", (fp.phi_kappa - fm.phi_kappa) * inv2dt, rhs_phik, tol, res));
  out.push_back(IdentityCheckResult::equality("d/dt int kappa^2", (fp.k2 - fm.k2) * inv2dt,
                                              rhs_k2, tol, res));
  out.push_back(IdentityCheckResult::equality(
      "d/dt int (d_tau kappa)^2", (fp.dk2 - fm.dk2) * inv2dt, rhs_dk2, tol, res));
  return out;
}

IdentityCheckResult verify_reilly(const Boundary& boundary, const VectorField& field,
                                  double grid_h, double tol) {
  BoundaryProximity prox(boundary);
  GridQuadrature grid(prox, grid_h);
  const double lhs = grid.integrate([&](const Vec2& z) {
    const Tensor3 H = field.hessian(z);
    const double h2 = H[0].squaredNorm() + H[1].squaredNorm();
    const Vec2 lap(H[0].trace(), H[1].trace());
    return h2 - lap.squaredNorm();
  });

  double rhs = 0.0;
  for (const auto& c : boundary.components) {
    const CurveFrame fr = curve_frame(c);
    const int n = c.size();
    Eigen::ArrayX2d Xs(n, 2);
    Eigen::ArrayXd gradsq(n), dnx0(n), dnx1(n);
    for (int i = 0; i < n; ++i) {
      const Vec2 x = c.node(i);
      const Vec2 val = field.value(x);
      Xs(i, 0) = val.x();
      Xs(i, 1) = val.y();
      const Mat2 J = field.jacobian(x);
      gradsq[i] = J.squaredNorm();
      const Vec2 nu(fr.nu(i, 0), fr.nu(i, 1));
      const Vec2 dn = J * nu;
      dnx0[i] = dn.x();
      dnx1[i] = dn.y();
    }
    // d_tau^2 of the boundary restriction, spectrally
    const Eigen::ArrayXd d1x0 = fourier::derivative(Xs.col(0).eval(), 1) / fr.sp;
    const Eigen::ArrayXd d1x1 = fourier::derivative(Xs.col(1).eval(), 1) / fr.sp;
    const Eigen::ArrayXd d2x0 = fourier::derivative(d1x0.eval(), 1) / fr.sp;
    const Eigen::ArrayXd d2x1 = fourier::derivative(d1x1.eval(), 1) / fr.sp;
    rhs -= ((2.0 * (dnx0 * d2x0 + dnx1 * d2x1) + fr.kappa * gradsq) * fr.weights).sum();
  }
  return IdentityCheckResult::equality("Reilly [" + field.name + "]", lhs, rhs, tol,
                                       "h=" + std::to_string(grid_h));
}

namespace {

// ---- finite-difference frame derivatives (the independent oracle route) ----

struct FrameProbe {
  const BoundaryProximity& prox;
  const DomainGeometry& geom;

  Vec2 tau_at(const Vec2& z) const { return prox.project(z).tangent; }

  // RK4 flow along the extended tangent field (stays on the level set of d)
  Vec2 tau_flow(const Vec2& z, double s) const {
    const int n = std::max(2, static_cast<int>(std::ceil(std::abs(s) / 0.02)) * 4);
    const double h = s / n;
    Vec2 x = z;
    for (int i = 0; i < n; ++i) {
      const Vec2 k1 = tau_at(x);
      const Vec2 k2 = tau_at(x + 0.5 * h * k1);
      const Vec2 k3 = tau_at(x + 0.5 * h * k2);
      const Vec2 k4 = tau_at(x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
  }

  Vec2 normal_line(const Vec2& z, double s) const {
    return z + s * prox.project(z).normal;
  }
};

using PointFn = std::function<Eigen::Vector2d(const Vec2&)>;

// 4th-order central stencils along a path gamma(s) with gamma(0) = z, wrapped
// in one Richardson step (h, h/2) for 6th-order accuracy.
Eigen::Vector2d d1_stencil(const PointFn& f, const std::function<Vec2(double)>& path,
                           double h) {
  return (-f(path(2 * h)) + 8 * f(path(h)) - 8 * f(path(-h)) + f(path(-2 * h))) / (12 * h);
}
Eigen::Vector2d d2_stencil(const PointFn& f, const std::function<Vec2(double)>& path,
                           double h) {
  return (-f(path(2 * h)) + 16 * f(path(h)) - 30 * f(path(0.0)) + 16 * f(path(-h)) -
          f(path(-2 * h))) /
         (12 * h * h);
}
Eigen::Vector2d d3_stencil(const PointFn& f, const std::function<Vec2(double)>& path,
                           double h) {
  return (-f(path(3 * h)) + 8 * f(path(2 * h)) - 13 * f(path(h)) + 13 * f(path(-h)) -
          8 * f(path(-2 * h)) + f(path(-3 * h))) /
         (8 * h * h * h);
}
template <typename Stencil>
Eigen::Vector2d richardson(const Stencil& st, const PointFn& f,
                           const std::function<Vec2(double)>& path, double h) {
  return (16.0 * st(f, path, h / 2) - st(f, path, h)) / 15.0;
}
Eigen::Vector2d d1_along(const PointFn& f, const std::function<Vec2(double)>& path,
                         double h) {
  return richardson(d1_stencil, f, path, h);
}
Eigen::Vector2d d2_along(const PointFn& f, const std::function<Vec2(double)>& path,
                         double h) {
  return richardson(d2_stencil, f, path, h);
}
Eigen::Vector2d d3_along(const PointFn& f, const std::function<Vec2(double)>& path,
                         double h) {
  return richardson(d3_stencil, f, path, h);
}

struct FdFrameDerivs {
  Vec2 dn, dt;
  Vec2 dnn, dtt, dnt, dtn;
  Vec2 dnnn, dnnt, dntt, dtnn, dttt;
};

FdFrameDerivs fd_frame_derivs(const FrameProbe& probe, const VectorField& X, const Vec2& z,
                              double h) {
  auto value = [&](const Vec2& w) -> Eigen::Vector2d { return X.value(w); };
  auto nline = [&](const Vec2& w) {
    return [&probe, w](double s) { return probe.normal_line(w, s); };
  };
  auto tflow = [&](const Vec2& w) {
    return [&probe, w](double s) { return probe.tau_flow(w, s); };
  };
  // first-order fields as functions of the base point (for nesting)
  auto dnu_of = [&](const Vec2& w) -> Eigen::Vector2d { return d1_along(value, nline(w), h); };
  auto dtau_of = [&](const Vec2& w) -> Eigen::Vector2d { return d1_along(value, tflow(w), h); };
  auto dnn_of = [&](const Vec2& w) -> Eigen::Vector2d { return d2_along(value, nline(w), h); };
  auto dtt_of = [&](const Vec2& w) -> Eigen::Vector2d { return d2_along(value, tflow(w), h); };

  FdFrameDerivs d;
  d.dn = dnu_of(z);
  d.dt = dtau_of(z);
  d.dnn = dnn_of(z);
  d.dtt = dtt_of(z);
  d.dnt = d1_along(dtau_of, nline(z), h);   // d_nu d_tau X
  d.dtn = d1_along(dnu_of, tflow(z), h);    // d_tau d_nu X
  d.dnnn = d3_along(value, nline(z), h);
  d.dnnt = d2_along(dtau_of, nline(z), h);  // d_nu^2 d_tau X
  d.dntt = d1_along(dtt_of, nline(z), h);   // d_nu d_tau^2 X
  d.dtnn = d1_along(dnn_of, tflow(z), h);   // d_tau d_nu^2 X
  d.dttt = d3_along(value, tflow(z), h);
  return d;
}

}  // namespace

std::vector<IdentityCheckResult> verify_frame_identities(const Boundary& boundary,
                                                         const VectorField& field,
                                                         int tube_samples, double tol) {
  std::vector<IdentityCheckResult> out;
  BoundaryProximity prox(boundary);
  const DomainGeometry geom = ubc_radius(boundary);
  const FrameProbe probe{prox, geom};
  const double r = geom.r_omega;
  const double h = std::min(0.01, r / 24.0);

  // sample points on the interior side of the tube at |d| = r/4
  const auto& outer = boundary.components[0];
  const CurveFrame fr = curve_frame(outer);
  double worst_change = 0, worst_delta = 0, worst_h2 = 0, worst_h3 = 0, worst_panh = 0;
  for (int s = 0; s < tube_samples; ++s) {
    const int i = (s * outer.size()) / tube_samples;
    const Vec2 z = outer.node(i) - (r / 8.0) * Vec2(fr.nu(i, 0), fr.nu(i, 1));
    const ExtendedFrame ef = extended_frame(geom, prox, z);
    const auto fd = fd_frame_derivs(probe, field, z, h);
    const double dn = ef.div_nu;

    // change of order: d_tau d_nu X = d_nu d_tau X + div nu d_tau X
    worst_change = std::max(worst_change,
                            (fd.dtn - fd.dnt - dn * Eigen::Vector2d(fd.dt)).norm());

    // Delta X = d_nu^2 X + d_tau^2 X + div nu d_nu X  (LHS analytic)
    const Tensor3 H = field.hessian(z);
    const Vec2 lap(H[0].trace(), H[1].trace());
    worst_delta = std::max(
        worst_delta, (Eigen::Vector2d(lap) - (fd.dnn + fd.dtt + dn * fd.dn)).norm());

    // |grad^2 X|^2 frame decomposition (LHS analytic)
    const double h2_analytic = H[0].squaredNorm() + H[1].squaredNorm();
    const double h2_frame =
        fd.dnn.squaredNorm() + 2.0 * fd.dnt.squaredNorm() + (fd.dtt + dn * fd.dn).squaredNorm();
    worst_h2 = std::max(worst_h2, std::abs(h2_analytic - h2_frame));

    // |grad^3 X|^2 frame decomposition (LHS analytic)
    const Tensor4 T = field.third(z);
    double h3_analytic = 0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) h3_analytic += T[a][b].squaredNorm();
    const Eigen::Vector2d mid = fd.dntt + dn * fd.dnn - dn * dn * fd.dn;
    const double h3_frame =
        fd.dnnn.squaredNorm() + 2.0 * fd.dnnt.squaredNorm() + 3.0 * mid.squaredNorm() +
        (fd.dtnn - 2.0 * dn * fd.dnt).squaredNorm() +
        (fd.dttt + 3.0 * dn * fd.dnt + ef.dtau_div_nu * fd.dn + dn * dn * fd.dt).squaredNorm();
    worst_h3 = std::max(worst_h3, std::abs(h3_analytic - h3_frame));

    // d_nu (div nu) = -(div nu)^2 along the normal line
    auto divnu_of = [&](const Vec2& w) -> Eigen::Vector2d {
      return Eigen::Vector2d(extended_frame(geom, prox, w).div_nu, 0.0);
    };
    const double dndn =
        d1_along(divnu_of, [&](double t) { return probe.normal_line(z, t); }, h)(0);
    worst_panh = std::max(worst_panh, std::abs(dndn + dn * dn));
  }
  const std::string res = std::to_string(tube_samples) + " tube points, h=" + std::to_string(h);
  out.push_back(IdentityCheckResult::equality("change of differentiation order [" + field.name + "]",
                                              worst_change, 0.0, tol, res));
  out.push_back(IdentityCheckResult::equality("Delta X frame decomposition [" + field.name + "]",
                                              worst_delta, 0.0, tol, res));
  out.push_back(IdentityCheckResult::equality("|grad^2 X|^2 frame decomposition [" + field.name + "]",
                                              worst_h2, 0.0, tol, res));
  out.push_back(IdentityCheckResult::equality("|grad^3 X|^2 frame decomposition [" + field.name + "]",
                                              worst_h3, 0.0, tol, res));
  out.push_back(IdentityCheckResult::equality("d_nu div nu = -(div nu)^2", worst_panh, 0.0,
                                              tol, res));
  return out;
}

std::vector<IdentityCheckResult> verify_cutoff_identities(const Boundary& boundary,
                                                          const ScalarField& field,
                                                          double grid_h, double tol) {
  std::vector<IdentityCheckResult> out;
  BoundaryProximity prox(boundary);
  const DomainGeometry geom = ubc_radius(boundary);
  const double r = geom.r_omega;
  const CutoffProfile profile;
  GridQuadrature grid(prox, grid_h, /*pad=*/r);
  const std::string res = "h=" + std::to_string(grid_h);

  // boundary integrals (spectral)
  double bnd_phi = 0, bnd_kphi = 0, bnd_f2 = 0;
  for (const auto& c : boundary.components) {
    const CurveFrame fr = curve_frame(c);
    for (int i = 0; i < c.size(); ++i) {
      const double f = field.value(c.node(i));
      bnd_phi += f * fr.weights[i];
      bnd_kphi += fr.kappa[i] * f * fr.weights[i];
      bnd_f2 += f * f * fr.weights[i];
    }
  }

  // bulk route of int_bnd phi via div(phi eta nu)
  const double bulk_phi = grid.integrate(
      [&](const Vec2& z) {
        const auto ef = extended_frame(geom, prox, z);
        const auto cv = cutoff_eta_at(geom, profile, ef.distance);
        const double f = field.value(z);
        const double dnf = field.grad(z).dot(ef.nu);
        return f * cv.d_nu + cv.eta * dnf + cv.eta * f * ef.div_nu;
      },
      -r / 2.0 * (1.0 - 1e-12), 0.0);
  out.push_back(IdentityCheckResult::equality("cutoff identity div(f nu) [" + field.name + "]",
                                              bnd_phi, bulk_phi, tol, res));

  // bulk route of int_bnd kappa phi via div(div nu phi eta nu)
  const double bulk_kphi = grid.integrate(
      [&](const Vec2& z) {
        const auto ef = extended_frame(geom, prox, z);
        const auto cv = cutoff_eta_at(geom, profile, ef.distance);
        const double f = field.value(z);
        const double dnf = field.grad(z).dot(ef.nu);
        return (cv.eta * dnf + f * cv.d_nu) * ef.div_nu;
      },
      -r / 2.0 * (1.0 - 1e-12), 0.0);
  out.push_back(IdentityCheckResult::equality(
      "cutoff identity div(divnu f nu) [" + field.name + "]", bnd_kphi, bulk_kphi, tol, res));

  // quantified trace inequality, p = 2 (one-sided)
  const double trace_rhs = grid.integrate([&](const Vec2& z) {
    const double f = field.value(z);
    return (2.0 / r) * f * f + 2.0 * std::abs(f) * field.grad(z).norm();
  });
  out.push_back(IdentityCheckResult::inequality("trace inequality p=2 [" + field.name + "]",
                                                bnd_f2, trace_rhs, tol, res));

  // bulk curvature estimate over the two-sided collar (sharp constant 320/81)
  const double dk2 = curvature_energies(boundary).dk_l2_sq;
  const double bulk_curv = grid.integrate(
      [&](const Vec2& z) {
        const auto ef = extended_frame(geom, prox, z);
        return ef.dtau_div_nu * ef.dtau_div_nu;
      },
      -r / 2.0 * (1.0 - 1e-12), r / 2.0 * (1.0 - 1e-12));
  out.push_back(IdentityCheckResult::inequality("bulk curvature estimate",
                                                bulk_curv, (320.0 / 81.0) * r * dk2, tol, res));
  return out;
}

GronwallMonitor holder_and_gronwall_monitor(const Trajectory& traj, double theta,
                                            double c_cal, bool calibrated) {
  if (traj.states.size() < 3)
    throw std::invalid_argument("holder_and_gronwall_monitor: need at least 3 records");
  GronwallMonitor mon;
  mon.c_cal = c_cal;
  mon.calibrated = calibrated;
  const MonitorContext ctx = make_context(traj.states.front().boundary, c_cal, calibrated);
  mon.K0 = std::tan(0.5 * (std::atan(ctx.dk0_sq) + kHalfPi));
  const double slope_unit =
      (std::pow(ctx.P0, 21) + 1.0) / (theta * std::pow(ctx.r0, 17));
  mon.T1 = (std::atan(mon.K0) - std::atan(ctx.dk0_sq)) / (c_cal * slope_unit);
  mon.Tstar = mon.T1 * std::min(1.0, std::pow(ctx.r0, 10));

  std::vector<double> rs, ts, dks;
  std::vector<Eigen::ArrayXd> kappas;
  for (const auto& st : traj.states) {
    rs.push_back(ubc_radius(st.boundary).r_omega);
    ts.push_back(st.t);
    dks.push_back(curvature_energies(st.boundary).dk_l2_sq);
  }
  mon.r_trace = rs;
  mon.t_trace = ts;
  mon.dk_trace = dks;
  mon.final_dk_sq = dks.back();

  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j)
      if (ts[j] > ts[i])
        mon.holder_sup =
            std::max(mon.holder_sup, std::abs(rs[j] - rs[i]) / std::cbrt(ts[j] - ts[i]));

  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double env = envelope_at(ctx, theta, ts[i]);
    mon.envelope_trace.push_back(env);
    if (dks[i] > env * (1.0 + 1e-9) + 1e-12) mon.envelope_contained = false;
    if (dks[i] > mon.K0) mon.K0_condition_held = false;
  }

  // curvature modulus between adjacent records within the rho-windows
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const auto& sa = traj.states[i - 1];
    const auto& sb = traj.states[i];
    const double dt = sb.t - sa.t;
    if (dt <= 0) continue;
    const double rho = std::pow(dt / theta, 2.0 / 3.0);
    if (rho <= 0) continue;
    for (std::size_t c = 0; c < sb.boundary.components.size() &&
                            c < sa.boundary.components.size();
         ++c) {
      const CurveFrame fb = curve_frame(sb.boundary.components[c]);
      const CurveFrame fa = curve_frame(sa.boundary.components[c]);
      const auto& cb = sb.boundary.components[c];
      const auto& ca = sa.boundary.components[c];
      for (int ib = 0; ib < cb.size(); ib += std::max(1, cb.size() / 16)) {
        double best = std::numeric_limits<double>::max();
        int ja = -1;
        for (int j = 0; j < ca.size(); ++j) {
          const double d = (cb.node(ib) - ca.node(j)).norm();
          if (d < best) {
            best = d;
            ja = j;
          }
        }
        if (ja >= 0 && best <= rho / 16.0) {
          const double dk = std::abs(fb.kappa(ib) - fa.kappa(ja));
          mon.curvature_modulus_sup =
              std::max(mon.curvature_modulus_sup, dk / std::sqrt(rho));
        }
      }
    }
  }

  // windowed-average bound on the final state
  const double rho = 0.5 * ubc_radius(traj.states.back().boundary).r_omega;
  mon.window_checks = check_windowed_average(traj.states.back().boundary, rho, 8);
  return mon;
}

double calibrate_growth_constant(const Trajectory& traj, double theta) {
  const MonitorContext ctx = make_context(traj.states.front().boundary);
  const double slope_unit =
      (std::pow(ctx.P0, 21) + 1.0) / (theta * std::pow(ctx.r0, 17));
  double c = 0.0;
  const double atan0 = std::atan(ctx.dk0_sq);
  for (const auto& st : traj.states) {
    if (st.t <= 0) continue;
    const double dk = curvature_energies(st.boundary).dk_l2_sq;
    c = std::max(c, (std::atan(dk) - atan0) / (slope_unit * st.t));
  }
  return std::max(1e-10, 1.05 * c);
}

std::vector<IdentityCheckResult> check_windowed_average(const Boundary& boundary,
                                                        double rho, int samples) {
  std::vector<IdentityCheckResult> out;
  const double dk_l2 = std::sqrt(curvature_energies(boundary).dk_l2_sq);
  for (std::size_t c = 0; c < boundary.components.size(); ++c) {
    const auto& curve = boundary.components[c];
    const CurveFrame fr = curve_frame(curve);
    const int n = curve.size();
    // arclength positions of the nodes
    Eigen::ArrayXd s(n);
    s[0] = 0;
    for (int i = 1; i < n; ++i) s[i] = s[i - 1] + fr.weights[i - 1];
    const double len = fr.length;
    for (int k = 0; k < samples; ++k) {
      const int i0 = (k * n) / samples;
      // tent window of arc half-width rho around node i0
      double wsum = 0, wk = 0;
      for (int j = 0; j < n; ++j) {
        double ds = std::abs(s[j] - s[i0]);
        ds = std::min(ds, len - ds);
        const double w = std::max(0.0, 1.0 - ds / rho) * fr.weights[j];
        wsum += w;
        wk += w * fr.kappa[j];
      }
      if (wsum <= 0) continue;
      const double avg = wk / wsum;
      out.push_back(IdentityCheckResult::inequality(
          "windowed curvature average (comp " + std::to_string(c) + ", node " +
              std::to_string(i0) + ")",
          std::abs(fr.kappa[i0] - avg), std::sqrt(kPi * rho) * dk_l2, 1e-9,
          "rho=" + std::to_string(rho)));
    }
  }
  return out;
}

}  // namespace dropflow
