#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dropflow {

// Spectral toolkit for smooth 2pi-periodic samples f(t_j), t_j = 2pi j / N.
// Sample counts are arbitrary (FFTW handles any N); derivatives, antiderivative
// and off-grid evaluation are spectrally accurate for smooth data.
namespace fourier {

// Real-to-complex coefficients c_k, k = 0..N/2 (rfft layout, unnormalized).
std::vector<std::complex<double>> forward(const Eigen::ArrayXd& values);

// Inverse of forward() onto n sample points.
Eigen::ArrayXd inverse(const std::vector<std::complex<double>>& coeff, int n);

// d^order/dt^order of the trigonometric interpolant, sampled on the grid.
// The Nyquist mode is zeroed for odd orders.
Eigen::ArrayXd derivative(const Eigen::ArrayXd& values, int order = 1);

// Periodic antiderivative of (f - mean f), plus mean(f) * t.
// Returns samples of F with F(0) = 0 and F' = f.
Eigen::ArrayXd antiderivative(const Eigen::ArrayXd& values);

// Evaluate the trigonometric interpolant at arbitrary parameter t.
double evaluate(const std::vector<std::complex<double>>& coeff, int n, double t);
double evaluate_derivative(const std::vector<std::complex<double>>& coeff, int n,
                           double t, int order);

// Resample f onto m equispaced points (trigonometric interpolation).
Eigen::ArrayXd resample(const Eigen::ArrayXd& values, int m);

}  // namespace fourier

}  // namespace dropflow
