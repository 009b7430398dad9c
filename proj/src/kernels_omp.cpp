#include <algorithm>
#include <cmath>
#include <vector>

#include "torsionlab/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace torsionlab::kernels {

namespace {

std::size_t num_blocks(std::size_t n) { return (n + kBlock - 1) / kBlock; }

template <class F>
double blocked_sum(std::size_t n, F&& partial) {
  const std::size_t nb = num_blocks(n);
  std::vector<double> parts(nb);
  const auto inb = static_cast<std::ptrdiff_t>(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < inb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    parts[static_cast<std::size_t>(b)] = partial(lo, hi);
  }
  double s = 0.0;
  for (double p : parts) s += p;
  return s;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace omp {

void apply(const Stencil& a, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const double* xs = x.data();
  const auto* nb = a.neighbours.data();
  const double* dg = a.diagonal.data();
  const double s = a.inv_h2;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto& q = nb[k];
    double acc = dg[k] * xs[k];
    for (int d = 0; d < 4; ++d)
      if (q[static_cast<std::size_t>(d)] >= 0) acc -= xs[q[static_cast<std::size_t>(d)]];
    y[static_cast<std::size_t>(k)] = acc * s;
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  return blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += x[k] * y[k];
    return s;
  });
}

double sum(std::span<const double> x) {
  return blocked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += x[k];
    return s;
  });
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) m = std::max(m, std::abs(x[static_cast<std::size_t>(k)]));
  return m;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k)
    y[static_cast<std::size_t>(k)] += alpha * x[static_cast<std::size_t>(k)];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    y[i] = x[i] + beta * y[i];
  }
}

void jacobi(const Stencil& a, std::span<const double> r, std::span<double> z) {
  const auto n = static_cast<std::ptrdiff_t>(r.size());
  const double h2 = 1.0 / a.inv_h2;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    z[i] = r[i] * h2 / a.diagonal[i];
  }
}

}  // namespace omp
}  // namespace torsionlab::kernels
