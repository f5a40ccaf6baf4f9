#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dropflow/curve.hpp"

namespace dropflow {

// Bivariate polynomial with exact differentiation; the workhorse behind the
// analytic test fields (their derivative tensors are exact, so identity
// residuals measure only the numerics under test).
class Poly2 {
 public:
  Poly2() : c_(Eigen::MatrixXd::Zero(1, 1)) {}
  explicit Poly2(Eigen::MatrixXd coeffs) : c_(std::move(coeffs)) {}

  static Poly2 monomial(int i, int j, double a = 1.0);

  double operator()(const Vec2& z) const;
  Poly2 dx() const;
  Poly2 dy() const;
  Poly2 operator+(const Poly2& o) const;
  Poly2 operator*(double s) const;
  Poly2 operator*(const Poly2& o) const;

 private:
  Eigen::MatrixXd c_;  // c_(i,j) x^i y^j
};

struct VectorField {
  std::string name;
  std::function<Vec2(const Vec2&)> value;
  std::function<Mat2(const Vec2&)> jacobian;  // jac(i,j) = d_j X_i
  std::function<Tensor3(const Vec2&)> hessian;
  std::function<Tensor4(const Vec2&)> third;
  bool biharmonic = false;
};

struct ScalarField {
  std::string name;
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> grad;
  std::function<Mat2(const Vec2&)> hess;
};

VectorField vector_field_from_polys(const std::string& name, const Poly2& fx,
                                    const Poly2& fy, bool biharmonic = false);
ScalarField scalar_field_from_poly(const std::string& name, const Poly2& f);

// Named fields used by the verification suites.
// Vector: linear_xy = (x, -y); xy0 = (xy, 0); rotation = (-y, x);
//         quad = (x^2 - y^2 + xy, 2xy - y^2); cubic = low-degree cubic pair;
//         harmonic3 = (Re z^3, Im z^3) (biharmonic); rstar = r^2-weighted.
VectorField vector_field_by_id(const std::string& id);
std::vector<std::string> vector_field_ids();

// Scalar: x1; x1sq; gauss_bump; trig; tanh_neck (transition tanh(x/0.5));
//         plus band-limited random samples via scalar_random().
ScalarField scalar_field_by_id(const std::string& id);
std::vector<std::string> scalar_field_ids();

// Random band-limited field sum a_k cos(<k,x> + phi_k), |k| <= kmax, with a
// deterministic seed.
ScalarField scalar_random(unsigned seed, int kmax = 3);
VectorField vector_random(unsigned seed, int kmax = 2);

}  // namespace dropflow
