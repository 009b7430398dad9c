#include <algorithm>
#include <cmath>

#include "torsionlab/kernels.hpp"

namespace torsionlab::kernels::reference {

void apply(const Stencil& a, std::span<const double> x, std::span<double> y) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    double acc = a.diagonal[k] * x[k];
    for (std::int32_t nb : a.neighbours[k])
      if (nb >= 0) acc -= x[static_cast<std::size_t>(nb)];
    y[k] = acc * a.inv_h2;
  }
}

// Same block order as the parallel version so results match bit for bit.
double dot(std::span<const double> x, std::span<const double> y) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < x.size(); lo += kBlock) {
    double s = 0.0;
    for (std::size_t k = lo; k < std::min(x.size(), lo + kBlock); ++k) s += x[k] * y[k];
    total += s;
  }
  return total;
}

double sum(std::span<const double> x) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < x.size(); lo += kBlock) {
    double s = 0.0;
    for (std::size_t k = lo; k < std::min(x.size(), lo + kBlock); ++k) s += x[k];
    total += s;
  }
  return total;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += alpha * x[k];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + beta * y[k];
}

void jacobi(const Stencil& a, std::span<const double> r, std::span<double> z) {
  const double h2 = 1.0 / a.inv_h2;
  for (std::size_t k = 0; k < r.size(); ++k) z[k] = r[k] * h2 / a.diagonal[k];
}

}  // namespace torsionlab::kernels::reference
