#include "dropflow/fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace dropflow {

Poly2 Poly2::monomial(int i, int j, double a) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(i + 1, j + 1);
  c(i, j) = a;
  return Poly2(c);
}

double Poly2::operator()(const Vec2& z) const {
  double acc = 0.0;
  double xi = 1.0;
  for (int i = 0; i < c_.rows(); ++i) {
    double yj = 1.0;
    for (int j = 0; j < c_.cols(); ++j) {
      acc += c_(i, j) * xi * yj;
      yj *= z.y();
    }
    xi *= z.x();
  }
  return acc;
}

Poly2 Poly2::dx() const {
  if (c_.rows() == 1) return Poly2();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(c_.rows() - 1, c_.cols());
  for (int i = 1; i < c_.rows(); ++i)
    for (int j = 0; j < c_.cols(); ++j) d(i - 1, j) = i * c_(i, j);
  return Poly2(d);
}

Poly2 Poly2::dy() const {
  if (c_.cols() == 1) return Poly2();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(c_.rows(), c_.cols() - 1);
  for (int i = 0; i < c_.rows(); ++i)
    for (int j = 1; j < c_.cols(); ++j) d(i, j - 1) = j * c_(i, j);
  return Poly2(d);
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(std::max(c_.rows(), o.c_.rows()),
                                            std::max(c_.cols(), o.c_.cols()));
  d.topLeftCorner(c_.rows(), c_.cols()) += c_;
  d.topLeftCorner(o.c_.rows(), o.c_.cols()) += o.c_;
  return Poly2(d);
}

Poly2 Poly2::operator*(double s) const { return Poly2(c_ * s); }

Poly2 Poly2::operator*(const Poly2& o) const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(c_.rows() + o.c_.rows() - 1,
                                            c_.cols() + o.c_.cols() - 1);
  for (int i = 0; i < c_.rows(); ++i)
    for (int j = 0; j < c_.cols(); ++j)
      for (int k = 0; k < o.c_.rows(); ++k)
        for (int l = 0; l < o.c_.cols(); ++l)
          d(i + k, j + l) += c_(i, j) * o.c_(k, l);
  return Poly2(d);
}

VectorField vector_field_from_polys(const std::string& name, const Poly2& fx,
                                    const Poly2& fy, bool biharmonic) {
  // precompute all partials up to third order; d[comp][#dx][#dy]
  std::array<std::array<std::array<Poly2, 4>, 4>, 2> d;
  d[0][0][0] = fx;
  d[1][0][0] = fy;
  for (int comp = 0; comp < 2; ++comp)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (a + b == 0 || a + b > 3) continue;
        if (a > 0)
          d[comp][a][b] = d[comp][a - 1][b].dx();
        else
          d[comp][a][b] = d[comp][a][b - 1].dy();
      }
  VectorField f;
  f.name = name;
  f.biharmonic = biharmonic;
  f.value = [d](const Vec2& z) { return Vec2(d[0][0][0](z), d[1][0][0](z)); };
  f.jacobian = [d](const Vec2& z) {
    Mat2 J;
    J << d[0][1][0](z), d[0][0][1](z), d[1][1][0](z), d[1][0][1](z);
    return J;
  };
  f.hessian = [d](const Vec2& z) {
    Tensor3 H;
    for (int i = 0; i < 2; ++i) {
      H[i] << d[i][2][0](z), d[i][1][1](z), d[i][1][1](z), d[i][0][2](z);
    }
    return H;
  };
  f.third = [d](const Vec2& z) {
    Tensor4 T;
    for (int i = 0; i < 2; ++i) {
      // T[i][j](k,l) = d_j d_k d_l X_i, symmetric in (j,k,l)
      auto part = [&](int a, int b) { return d[i][a][b](z); };
      Mat2 T0, T1;
      T0 << part(3, 0), part(2, 1), part(2, 1), part(1, 2);
      T1 << part(2, 1), part(1, 2), part(1, 2), part(0, 3);
      T[i][0] = T0;
      T[i][1] = T1;
    }
    return T;
  };
  return f;
}

ScalarField scalar_field_from_poly(const std::string& name, const Poly2& f) {
  const Poly2 fx = f.dx(), fy = f.dy();
  const Poly2 fxx = fx.dx(), fxy = fx.dy(), fyy = fy.dy();
  ScalarField s;
  s.name = name;
  s.value = [f](const Vec2& z) { return f(z); };
  s.grad = [fx, fy](const Vec2& z) { return Vec2(fx(z), fy(z)); };
  s.hess = [fxx, fxy, fyy](const Vec2& z) {
    Mat2 H;
    H << fxx(z), fxy(z), fxy(z), fyy(z);
    return H;
  };
  return s;
}

VectorField vector_field_by_id(const std::string& id) {
  using P = Poly2;
  if (id == "linear_xy")
    return vector_field_from_polys(id, P::monomial(1, 0), P::monomial(0, 1, -1.0), true);
  if (id == "xy0")
    return vector_field_from_polys(id, P::monomial(1, 1), P(), true);
  if (id == "rotation")
    return vector_field_from_polys(id, P::monomial(0, 1, -1.0), P::monomial(1, 0), true);
  if (id == "quad")
    return vector_field_from_polys(
        id, P::monomial(2, 0) + P::monomial(0, 2, -1.0) + P::monomial(1, 1),
        P::monomial(1, 1, 2.0) + P::monomial(0, 2, -1.0));
  if (id == "cubic")
    return vector_field_from_polys(
        id,
        P::monomial(3, 0, 0.25) + P::monomial(1, 2, -0.5) + P::monomial(2, 0) +
            P::monomial(0, 1, 0.75),
        P::monomial(2, 1, 0.5) + P::monomial(0, 3, -0.25) + P::monomial(1, 1));
  if (id == "harmonic3")  // (Re z^3, Im z^3): harmonic, hence biharmonic
    return vector_field_from_polys(
        id, P::monomial(3, 0) + P::monomial(1, 2, -3.0),
        P::monomial(2, 1, 3.0) + P::monomial(0, 3, -1.0), true);
  if (id == "harmonic2")  // (Re z^2, Im z^2)
    return vector_field_from_polys(id, P::monomial(2, 0) + P::monomial(0, 2, -1.0),
                                   P::monomial(1, 1, 2.0), true);
  if (id == "rstar") {  // |z|^2 (1,1) + cubic corrections: generic non-harmonic
    const P r2 = P::monomial(2, 0) + P::monomial(0, 2);
    return vector_field_from_polys(id, r2 + P::monomial(2, 1, 0.3),
                                   r2 * 0.5 + P::monomial(1, 2, -0.2));
  }
  throw std::invalid_argument("unknown vector field id: " + id);
}

std::vector<std::string> vector_field_ids() {
  return {"linear_xy", "xy0", "rotation", "quad", "cubic", "harmonic3", "harmonic2", "rstar"};
}

ScalarField scalar_field_by_id(const std::string& id) {
  using P = Poly2;
  if (id == "x1") return scalar_field_from_poly(id, P::monomial(1, 0));
  if (id == "x1sq") return scalar_field_from_poly(id, P::monomial(2, 0));
  if (id == "x1x2") return scalar_field_from_poly(id, P::monomial(1, 1));
  if (id == "quad_mix")
    return scalar_field_from_poly(
        id, P::monomial(2, 0) + P::monomial(1, 1, -0.5) + P::monomial(0, 1, 0.25));
  if (id == "trig") {
    ScalarField s;
    s.name = id;
    s.value = [](const Vec2& z) { return std::sin(z.x()) * std::cos(0.7 * z.y()); };
    s.grad = [](const Vec2& z) {
      return Vec2(std::cos(z.x()) * std::cos(0.7 * z.y()),
                  -0.7 * std::sin(z.x()) * std::sin(0.7 * z.y()));
    };
    s.hess = [](const Vec2& z) {
      Mat2 H;
      const double sx = std::sin(z.x()), cx = std::cos(z.x());
      const double sy = std::sin(0.7 * z.y()), cy = std::cos(0.7 * z.y());
      H << -sx * cy, -0.7 * cx * sy, -0.7 * cx * sy, -0.49 * sx * cy;
      return H;
    };
    return s;
  }
  if (id == "tanh_neck") {
    // neck-length-scaled transition used as the Poincare witness on dumbbells
    const double delta = 0.5;
    ScalarField s;
    s.name = id;
    s.value = [delta](const Vec2& z) { return std::tanh(z.x() / delta); };
    s.grad = [delta](const Vec2& z) {
      const double c = std::cosh(z.x() / delta);
      return Vec2(1.0 / (delta * c * c), 0.0);
    };
    s.hess = [delta](const Vec2& z) {
      const double t = std::tanh(z.x() / delta), c = std::cosh(z.x() / delta);
      Mat2 H = Mat2::Zero();
      H(0, 0) = -2.0 * t / (delta * delta * c * c);
      return H;
    };
    return s;
  }
  throw std::invalid_argument("unknown scalar field id: " + id);
}

std::vector<std::string> scalar_field_ids() {
  return {"x1", "x1sq", "x1x2", "quad_mix", "trig", "tanh_neck"};
}

ScalarField scalar_random(unsigned seed, int kmax) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 2 * M_PI);
  struct Mode {
    double kx, ky, a, phi;
  };
  std::vector<Mode> modes;
  for (int kx = 0; kx <= kmax; ++kx)
    for (int ky = -kmax; ky <= kmax; ++ky) {
      if (kx == 0 && ky <= 0) continue;
      modes.push_back({0.9 * kx, 0.9 * ky, amp(rng) / (1.0 + kx * kx + ky * ky), ph(rng)});
    }
  ScalarField s;
  s.name = "random#" + std::to_string(seed);
  s.value = [modes](const Vec2& z) {
    double acc = 0;
    for (const auto& m : modes) acc += m.a * std::cos(m.kx * z.x() + m.ky * z.y() + m.phi);
    return acc;
  };
  s.grad = [modes](const Vec2& z) {
    Vec2 g = Vec2::Zero();
    for (const auto& m : modes) {
      const double sn = std::sin(m.kx * z.x() + m.ky * z.y() + m.phi);
      g.x() += -m.a * m.kx * sn;
      g.y() += -m.a * m.ky * sn;
    }
    return g;
  };
  s.hess = [modes](const Vec2& z) {
    Mat2 H = Mat2::Zero();
    for (const auto& m : modes) {
      const double cs = std::cos(m.kx * z.x() + m.ky * z.y() + m.phi);
      H(0, 0) += -m.a * m.kx * m.kx * cs;
      H(0, 1) += -m.a * m.kx * m.ky * cs;
      H(1, 1) += -m.a * m.ky * m.ky * cs;
    }
    H(1, 0) = H(0, 1);
    return H;
  };
  return s;
}

VectorField vector_random(unsigned seed, int kmax) {
  // random low-degree polynomial vector field (exact tensors)
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-0.5, 0.5);
  Poly2 fx, fy;
  for (int i = 0; i <= kmax; ++i)
    for (int j = 0; j + i <= kmax + 1; ++j) {
      fx = fx + Poly2::monomial(i, j, amp(rng));
      fy = fy + Poly2::monomial(i, j, amp(rng));
    }
  return vector_field_from_polys("vrandom#" + std::to_string(seed), fx, fy);
}

}  // namespace dropflow
