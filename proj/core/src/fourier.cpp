#include "dropflow/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dropflow::fourier {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::vector<std::complex<double>> forward(const Eigen::ArrayXd& values) {
  const int n = static_cast<int>(values.size());
  if (n < 2) throw std::invalid_argument("fourier::forward: need at least 2 samples");
  std::vector<double> in(values.data(), values.data() + n);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(
      n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

Eigen::ArrayXd inverse(const std::vector<std::complex<double>>& coeff, int n) {
  if (static_cast<int>(coeff.size()) != n / 2 + 1)
    throw std::invalid_argument("fourier::inverse: coefficient count mismatch");
  std::vector<std::complex<double>> in(coeff);
  Eigen::ArrayXd out(n);
  fftw_plan plan = fftw_plan_dft_c2r_1d(
      n, reinterpret_cast<fftw_complex*>(in.data()), out.data(), FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  out /= static_cast<double>(n);
  return out;
}

Eigen::ArrayXd derivative(const Eigen::ArrayXd& values, int order) {
  const int n = static_cast<int>(values.size());
  auto c = forward(values);
  for (int k = 0; k < static_cast<int>(c.size()); ++k) {
    std::complex<double> ik(0.0, static_cast<double>(k));
    c[k] *= std::pow(ik, order);
  }
  if (order % 2 == 1 && n % 2 == 0) c.back() = 0.0;
  return inverse(c, n);
}

Eigen::ArrayXd antiderivative(const Eigen::ArrayXd& values) {
  const int n = static_cast<int>(values.size());
  auto c = forward(values);
  const double mean = c[0].real() / n;
  c[0] = 0.0;
  for (int k = 1; k < static_cast<int>(c.size()); ++k)
    c[k] /= std::complex<double>(0.0, static_cast<double>(k));
  if (n % 2 == 0) c.back() = 0.0;
  Eigen::ArrayXd osc = inverse(c, n);
  Eigen::ArrayXd out(n);
  for (int j = 0; j < n; ++j) out[j] = osc[j] - osc[0] + mean * (kTwoPi * j / n);
  return out;
}

double evaluate(const std::vector<std::complex<double>>& coeff, int n, double t) {
  return evaluate_derivative(coeff, n, t, 0);
}

double evaluate_derivative(const std::vector<std::complex<double>>& coeff, int n,
                           double t, int order) {
  // sum over k of c_k (ik)^order e^{ikt}, doubling k>0 modes; the phase is
  // advanced by recurrence (one sincos for the whole sum).
  const int kmax = static_cast<int>(coeff.size()) - 1;
  std::complex<double> acc = (order == 0) ? coeff[0] : std::complex<double>(0.0);
  const bool even = (n % 2 == 0);
  const std::complex<double> step(std::cos(t), std::sin(t));
  std::complex<double> e = step;
  for (int k = 1; k <= kmax; ++k, e *= step) {
    std::complex<double> ck = coeff[k];
    for (int o = 0; o < order; ++o) ck *= std::complex<double>(0.0, static_cast<double>(k));
    if (even && k == kmax) {
      // Nyquist mode: real cosine mode; odd derivatives drop it.
      if (order % 2 == 1) continue;
      acc += ck * e.real();
    } else {
      acc += 2.0 * ck * e;
    }
  }
  return acc.real() / n;
}

Eigen::ArrayXd resample(const Eigen::ArrayXd& values, int m) {
  const int n = static_cast<int>(values.size());
  auto c = forward(values);
  std::vector<std::complex<double>> cm(m / 2 + 1, 0.0);
  const int keep = std::min(n / 2, m / 2);
  for (int k = 0; k <= keep; ++k) cm[k] = c[k];
  if (n % 2 == 0 && n / 2 <= m / 2) cm[n / 2] = c[n / 2];  // keep Nyquist as-is
  for (auto& z : cm) z *= static_cast<double>(m) / n;
  return inverse(cm, m);
}

}  // namespace dropflow::fourier
