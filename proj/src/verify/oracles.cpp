#include "torsionlab/verify/oracles.hpp"

#include <cmath>
#include <numbers>

namespace torsionlab::verify {

using std::numbers::pi;

double square_torsion_double_series(double x, double y, int terms) {
  // separable: precompute the sines once per direction
  std::vector<double> sx(static_cast<std::size_t>(terms)), sy(static_cast<std::size_t>(terms));
  for (int i = 0; i < terms; ++i) {
    const int k = 2 * i + 1;
    sx[static_cast<std::size_t>(i)] = std::sin(k * pi * x) / k;
    sy[static_cast<std::size_t>(i)] = std::sin(k * pi * y) / k;
  }
  double total = 0.0;
  for (int i = terms - 1; i >= 0; --i) {
    const double j = 2 * i + 1;
    double row = 0.0;
    for (int l = terms - 1; l >= 0; --l) {
      const double k = 2 * l + 1;
      row += sy[static_cast<std::size_t>(l)] / (j * j + k * k);
    }
    total += sx[static_cast<std::size_t>(i)] * row;
  }
  return 16.0 / (pi * pi * pi * pi) * total;
}

double square_torsion_single_series(double x, double y) {
  double total = 0.5 * x * (1.0 - x);
  const double dy = std::abs(y - 0.5);
  for (int k = 1; k < 2000001; k += 2) {
    // cosh(k pi dy) / cosh(k pi / 2), written to avoid overflow
    const double ratio = std::exp(k * pi * (dy - 0.5)) * (1.0 + std::exp(-2.0 * k * pi * dy)) /
                         (1.0 + std::exp(-k * pi));
    const double amp = 4.0 / (k * k * k * pi * pi * pi);
    total -= amp * std::sin(k * pi * x) * ratio;
    // remaining terms are bounded by the tail of amp * ratio
    if (amp * ratio * k < 1e-15) break;
  }
  return total;
}

std::vector<double> square_torsion_on_lattice(int m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m - 1) * (m - 1));
  for (int j = 1; j < m; ++j)
    for (int i = 1; i < m; ++i) out.push_back(square_torsion_single_series(double(i) / m, double(j) / m));
  return out;
}

double square_torsional_rigidity(int terms) {
  double total = 0.0;
  for (int i = terms - 1; i >= 0; --i) {
    const double j = 2 * i + 1;
    for (int l = terms - 1; l >= 0; --l) {
      const double k = 2 * l + 1;
      total += 1.0 / (j * j * k * k * (j * j + k * k));
    }
  }
  return 64.0 / std::pow(pi, 6) * total;
}

double bessel_j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0, total = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    total += term;
    if (std::abs(term) < 1e-18 * std::abs(total) && k > 5) break;
  }
  return total;
}

double bessel_j0_first_zero() {
  double lo = 2.0, hi = 3.0;  // J0(2) > 0 > J0(3)
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j0_series(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double erf_series(double x) {
  if (x < 0.0) return -erf_series(-x);
  if (x > 6.0) return 1.0;  // 1 - erf(6) < 3e-17
  double term = x, total = x;
  for (int n = 1; n < 10000; ++n) {
    term *= 2.0 * x * x / (2.0 * n + 1.0);
    total += term;
    if (term < 1e-17 * total) break;
  }
  return 2.0 / std::sqrt(pi) * std::exp(-x * x) * total;
}

double interval_survival_series(double x1, double b, double t) {
  double total = 0.0;
  for (int k = 1; k < 2000001; k += 2) {
    const double decay = std::exp(-static_cast<double>(k) * k * pi * pi * t / (b * b));
    total += 4.0 / (k * pi) * std::sin(k * pi * x1 / b) * decay;
    if (decay < 1e-16) break;
  }
  return total;
}

double square_discrete_lambda1(double h) { return 2.0 * (2.0 - 2.0 * std::cos(pi * h)) / (h * h); }

}  // namespace torsionlab::verify
