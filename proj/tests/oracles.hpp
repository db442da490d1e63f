// Independent oracles for the test suites. Everything here recomputes
// expected values through routes that do not share code with the library:
// position-basis quadrature of the Wigner definition, direct series for
// coherent states, std::assoc_laguerre for the kernel polynomials.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <wflow/fock.hpp>

namespace oracles {

using wflow::Complex;
using wflow::ComplexMatrix;

/// Harmonic oscillator eigenfunction psi_n(x) (dimensionless units), via the
/// stable recurrence psi_n = sqrt(2/n) x psi_{n-1} - sqrt((n-1)/n) psi_{n-2}.
inline double hermite_psi(int n, double x) {
  double prev2 = 0.0;
  double prev = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return prev;
  for (int k = 1; k <= n; ++k) {
    const double cur = std::sqrt(2.0 / k) * x * prev - std::sqrt(double(k - 1) / k) * prev2;
    prev2 = prev;
    prev = cur;
  }
  return prev;
}

/// Direct numerical quadrature of the Wigner definition
///   W(x,p) = (1/pi) Int dy e^{-2ipy} <x+y|rho|x-y>
/// with Simpson's rule on [-cutoff, cutoff]. Returns the complex value so the
/// caller can check the imaginary residue as well.
inline Complex wigner_quadrature(const ComplexMatrix& rho, double x, double p,
                                 double cutoff = 10.0, int intervals = 4000) {
  const int dim = int(rho.rows());
  const double h = 2.0 * cutoff / intervals;
  Complex sum(0.0, 0.0);
  std::vector<double> psi_plus(static_cast<size_t>(dim), 0.0), psi_minus(static_cast<size_t>(dim), 0.0);
  for (int k = 0; k <= intervals; ++k) {
    const double y = -cutoff + k * h;
    for (int n = 0; n < dim; ++n) {
      psi_plus[size_t(n)] = hermite_psi(n, x + y);
      psi_minus[size_t(n)] = hermite_psi(n, x - y);
    }
    Complex kernel(0.0, 0.0);
    for (int m = 0; m < dim; ++m)
      for (int n = 0; n < dim; ++n)
        kernel += rho(m, n) * psi_plus[size_t(m)] * psi_minus[size_t(n)];
    const Complex phase = std::exp(Complex(0.0, -2.0 * p * y));
    const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += weight * phase * kernel;
  }
  return sum * (h / 3.0) / M_PI;
}

/// Coherent-state amplitudes <n|alpha> by direct series evaluation.
inline std::vector<Complex> coherent_series(Complex alpha, int dim) {
  std::vector<Complex> c(static_cast<size_t>(dim), Complex(0.0, 0.0));
  double log_fact = 0.0;
  for (int n = 0; n < dim; ++n) {
    if (n > 0) log_fact += std::log(double(n));
    c[size_t(n)] = std::pow(alpha, n) * std::exp(-0.5 * std::norm(alpha) - 0.5 * log_fact);
  }
  return c;
}

/// Full complex Fock-kernel sum with std::assoc_laguerre as the independent
/// Laguerre route; pairs K_nm = conj(K_mn) explicitly.
inline Complex wigner_kernel_reference(const ComplexMatrix& rho, double x, double p) {
  const int dim = int(rho.rows());
  const double r2 = x * x + p * p;
  const Complex b = std::sqrt(2.0) * Complex(x, p);
  Complex sum(0.0, 0.0);
  for (int m = 0; m < dim; ++m) {
    for (int n = m; n < dim; ++n) {
      double coef = (m % 2 == 0 ? 1.0 : -1.0) / M_PI;  // (-1)^m sqrt(m!/n!)
      for (int j = m + 1; j <= n; ++j) coef /= std::sqrt(double(j));
      const double lag = std::assoc_laguerre(unsigned(m), unsigned(n - m), 2.0 * r2);
      const Complex k_mn = coef * std::exp(-r2) * std::pow(b, n - m) * lag;
      if (m == n) {
        sum += rho(m, n) * k_mn;
      } else {
        sum += rho(m, n) * k_mn + rho(n, m) * std::conj(k_mn);
      }
    }
  }
  return sum;
}

/// Closed-form Wigner function of the even cat N(|a> + |-a>), a real.
inline double cat_wigner(double separation, double x, double p) {
  const double x0 = separation / 2.0;  // peak position, = sqrt(2) alpha
  const double a2 = x0 * x0 / 2.0;     // alpha^2
  const double norm2 = 1.0 / (2.0 * (1.0 + std::exp(-2.0 * a2)));
  const double g = std::exp(-(x - x0) * (x - x0) - p * p) +
                   std::exp(-(x + x0) * (x + x0) - p * p) +
                   2.0 * std::exp(-x * x - p * p) * std::cos(2.0 * x0 * p);
  return norm2 * g / M_PI;
}

/// Integral of min(f, 0) over [-extent, extent]^2 on a fine midpoint grid.
template <typename F>
double negative_volume_quadrature(F&& f, double extent, int n) {
  const double h = 2.0 * extent / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -extent + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double p = -extent + (j + 0.5) * h;
      const double v = f(x, p);
      if (v < 0.0) sum += v;
    }
  }
  return sum * h * h;
}

}  // namespace oracles
