#include "dropflow/inequalities.hpp"

#include <cmath>

#include "dropflow/geometry.hpp"
#include "dropflow/quadrature.hpp"
#include "dropflow/shapes.hpp"

namespace dropflow {

ScalarField scaled_field(const ScalarField& f, double lambda) {
  ScalarField s;
  s.name = f.name + "@" + std::to_string(lambda);
  s.value = [f, lambda](const Vec2& z) { return f.value(z / lambda); };
  s.grad = [f, lambda](const Vec2& z) { return (f.grad(z / lambda) / lambda).eval(); };
  s.hess = [f, lambda](const Vec2& z) {
    return (f.hess(z / lambda) / (lambda * lambda)).eval();
  };
  return s;
}

VectorField scaled_field(const VectorField& f, double lambda) {
  VectorField s;
  s.name = f.name + "@" + std::to_string(lambda);
  s.biharmonic = f.biharmonic;
  s.value = [f, lambda](const Vec2& z) { return f.value(z / lambda); };
  s.jacobian = [f, lambda](const Vec2& z) { return (f.jacobian(z / lambda) / lambda).eval(); };
  s.hessian = [f, lambda](const Vec2& z) {
    Tensor3 H = f.hessian(z / lambda);
    H[0] /= lambda * lambda;
    H[1] /= lambda * lambda;
    return H;
  };
  s.third = [f, lambda](const Vec2& z) {
    Tensor4 T = f.third(z / lambda);
    const double l3 = lambda * lambda * lambda;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) T[i][j] /= l3;
    return T;
  };
  return s;
}

std::vector<NamedBoundary> standard_inequality_domains(int nodes) {
  std::vector<NamedBoundary> out;
  out.push_back({"disk", shapes::disk_boundary(1.0, nodes)});
  out.push_back({"ellipse", shapes::ellipse_boundary(2.0, 1.0, nodes)});
  out.push_back({"annulus", shapes::annulus_boundary(1.0, 2.0, nodes)});
  for (double w : {0.2, 0.1, 0.025})
    out.push_back({"dumbbell_w" + std::to_string(w).substr(0, 5),
                   shapes::dumbbell_boundary(w, std::max(nodes, 512))});
  return out;
}

namespace {

struct DomainData {
  const NamedBoundary* nb;
  BoundaryProximity prox;
  DomainGeometry geom;
  GridQuadrature grid;
  double P, A;
};

double sym_sq(const Mat2& J) { return (0.5 * (J + J.transpose())).squaredNorm(); }

void scalar_rows(const DomainData& D, const ScalarField& f,
                 std::vector<InequalityRow>& out) {
  const double r = D.geom.r_omega;
  // moments over Omega
  const double area = D.grid.region_area(-std::numeric_limits<double>::infinity(), 0.0);
  const double fbar =
      D.grid.integrate([&](const Vec2& z) { return f.value(z); }) / area;
  const double var = D.grid.integrate([&](const Vec2& z) {
    const double d = f.value(z) - fbar;
    return d * d;
  });
  const double g2 = D.grid.integrate([&](const Vec2& z) { return f.grad(z).squaredNorm(); });
  const double f2 = D.grid.integrate([&](const Vec2& z) {
    const double v = f.value(z);
    return v * v;
  });
  const double h2 = D.grid.integrate([&](const Vec2& z) { return f.hess(z).squaredNorm(); });
  // sup over a lambda-covariant probe set: boundary nodes plus node rays
  // shrunk toward the outer component's centroid
  double sup = 0.0;
  {
    const auto& outer = D.nb->boundary.components[0];
    double cx = outer.nodes.col(0).mean(), cy = outer.nodes.col(1).mean();
    for (const auto& c : D.nb->boundary.components)
      for (int i = 0; i < c.size(); ++i) {
        const Vec2 p = c.node(i);
        sup = std::max(sup, std::abs(f.value(p)));
        for (double s : {0.25, 0.5, 0.75}) {
          const Vec2 q(cx + s * (p.x() - cx), cy + s * (p.y() - cy));
          if (D.prox.signed_distance(q) < 0) sup = std::max(sup, std::abs(f.value(q)));
        }
      }
  }

  if (g2 > 1e-14) {
    InequalityRow row;
    row.domain = D.nb->name;
    row.inequality = "poincare";
    row.field = f.name;
    row.lhs = var;
    row.structural_rhs = (D.A * D.P / r) * g2;
    row.ratio = row.lhs / row.structural_rhs;
    row.ratio_p2 = var / (D.P * D.P * g2);
    row.r_omega = r;
    row.area = D.A;
    row.perimeter = D.P;
    out.push_back(row);
  }
  const double rhs_gn = std::pow(h2, 0.25) * std::pow(f2, 0.25) + std::sqrt(f2) / r;
  if (rhs_gn > 1e-14) {
    InequalityRow row;
    row.domain = D.nb->name;
    row.inequality = "gn_l2";
    row.field = f.name;
    row.lhs = std::sqrt(g2);
    row.structural_rhs = rhs_gn;
    row.ratio = row.lhs / row.structural_rhs;
    row.r_omega = r;
    row.area = D.A;
    row.perimeter = D.P;
    out.push_back(row);
    row.inequality = "gn_linf";
    row.lhs = sup;
    row.ratio = row.lhs / row.structural_rhs;
    out.push_back(row);
  }
}

void vector_rows(const DomainData& D, const VectorField& X,
                 std::vector<InequalityRow>& out) {
  const double r = D.geom.r_omega;
  const double x2 = D.grid.integrate([&](const Vec2& z) { return X.value(z).squaredNorm(); });
  const double j2 = D.grid.integrate([&](const Vec2& z) { return X.jacobian(z).squaredNorm(); });
  const double s2 = D.grid.integrate([&](const Vec2& z) { return sym_sq(X.jacobian(z)); });
  const double area = D.A;

  auto push = [&](const std::string& ineq, double lhs, double rhs) {
    if (rhs <= 1e-14) return;
    InequalityRow row;
    row.domain = D.nb->name;
    row.inequality = ineq;
    row.field = X.name;
    row.lhs = lhs;
    row.structural_rhs = rhs;
    row.ratio = lhs / rhs;
    row.r_omega = r;
    row.area = D.A;
    row.perimeter = D.P;
    out.push_back(row);
  };

  // Korn: |grad X|^2 <= C(|sym grad X|^2 + r^-2 |X|^2)
  push("korn", j2, s2 + x2 / (r * r));

  // Korn with cutoff weight
  const CutoffProfile profile;
  const double j2e = D.grid.integrate(
      [&](const Vec2& z) {
        const double d = D.prox.signed_distance(z);
        return cutoff_eta_at(D.geom, profile, d).eta * X.jacobian(z).squaredNorm();
      },
      -D.geom.r_omega / 2.0, 0.0);
  const double s2e = D.grid.integrate(
      [&](const Vec2& z) {
        const double d = D.prox.signed_distance(z);
        return cutoff_eta_at(D.geom, profile, d).eta * sym_sq(X.jacobian(z));
      },
      -D.geom.r_omega / 2.0, 0.0);
  const double x2e = D.grid.integrate([&](const Vec2& z) { return X.value(z).squaredNorm(); },
                                      -D.geom.r_omega / 2.0, 0.0);
  push("korn_cutoff", j2e, s2e + x2e / (r * r));

  // Korn-Poincare with mean-gradient subtraction
  Mat2 jint = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int aa = a, bb = b;
      jint(aa, bb) =
          D.grid.integrate([&](const Vec2& z) { return X.jacobian(z)(aa, bb); });
    }
  const Mat2 javg = jint / area;
  const Mat2 savg = 0.5 * (javg + javg.transpose());
  const double jc2 = D.grid.integrate(
      [&](const Vec2& z) { return (X.jacobian(z) - javg).squaredNorm(); });
  const double sc2 = D.grid.integrate([&](const Vec2& z) {
    const Mat2 J = X.jacobian(z);
    return (0.5 * (J + J.transpose()) - savg).squaredNorm();
  });
  push("korn_poincare_mean", jc2, (area * D.P / (r * r * r)) * sc2);

  // Korn-Poincare for the representative with symmetric mean gradient:
  // subtract the rigid rotation matching the antisymmetric mean
  const double omega = 0.5 * (javg(1, 0) - javg(0, 1));
  const double j2s = D.grid.integrate([&](const Vec2& z) {
    Mat2 J = X.jacobian(z);
    J(0, 1) += omega;
    J(1, 0) -= omega;
    return J.squaredNorm();
  });
  push("korn_poincare", j2s, (area * D.P / (r * r * r)) * s2);

  // interior regularity for biharmonic fields
  if (X.biharmonic) {
    const double rho = r / 2.0;
    const double t3 = D.grid.integrate(
        [&](const Vec2& z) {
          const Tensor4 T = X.third(z);
          double acc = 0;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) acc += T[i][j].squaredNorm();
          return acc;
        },
        -std::numeric_limits<double>::infinity(), -rho);
    const double h2 = D.grid.integrate([&](const Vec2& z) {
      const Tensor3 H = X.hessian(z);
      return H[0].squaredNorm() + H[1].squaredNorm();
    });
    const double rhs = h2 / (rho * rho) + j2 / std::pow(rho, 4) + x2 / std::pow(rho, 6);
    push("interior_reg", t3, rhs);
  }
}

}  // namespace

std::vector<InequalityRow> inequality_table(const std::vector<NamedBoundary>& domains,
                                            int random_trials, double grid_scale,
                                            double lambda) {
  std::vector<InequalityRow> out;
  for (const auto& nb0 : domains) {
    NamedBoundary nb{nb0.name, lambda == 1.0 ? nb0.boundary
                                             : shapes::scaled(nb0.boundary, lambda)};
    BoundaryProximity prox(nb.boundary);
    const DomainGeometry geom = ubc_radius(nb.boundary);
    const auto pa = perimeter_area(nb.boundary);
    // grid spacing: a fraction of the UBC radius, capped for thin necks
    const double h =
        lambda * std::max(geom.r_omega / lambda / grid_scale, pa.perimeter / lambda / 2048.0);
    GridQuadrature grid(prox, h);
    DomainData D{&nb, std::move(prox), geom, std::move(grid), pa.perimeter, pa.area};

    std::vector<ScalarField> sfields = {scalar_field_by_id("x1"),
                                        scalar_field_by_id("quad_mix"),
                                        scalar_field_by_id("trig")};
    if (nb.name.rfind("dumbbell", 0) == 0)
      sfields.push_back(scalar_field_by_id("tanh_neck"));
    for (int t = 0; t < random_trials; ++t) sfields.push_back(scalar_random(100 + t));

    std::vector<VectorField> vfields = {vector_field_by_id("rotation"),
                                        vector_field_by_id("quad"),
                                        vector_field_by_id("harmonic2"),
                                        vector_field_by_id("harmonic3")};
    for (int t = 0; t < random_trials; ++t) vfields.push_back(vector_random(200 + t));

    for (auto& f : sfields) {
      if (lambda != 1.0) f = scaled_field(f, lambda);
      scalar_rows(D, f, out);
    }
    for (auto& X : vfields) {
      if (lambda != 1.0) X = scaled_field(X, lambda);
      vector_rows(D, X, out);
    }
  }
  return out;
}

}  // namespace dropflow
