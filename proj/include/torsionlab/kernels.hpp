#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "torsionlab/grid.hpp"

// Data-parallel building blocks of the elliptic solvers.
//
// `kernels::omp` is what the solvers call. `kernels::reference` holds plain
// serial loops with the same contracts; tests compare the two and the
// benchmark target times them against each other.
//
// Reductions are summed over fixed-size blocks whose partials are then added
// in block order, so results do not depend on the number of threads.

namespace torsionlab::kernels {

/// Matrix-free view of the discrete Dirichlet Laplacian on a grid.
struct Stencil {
  std::span<const std::array<std::int32_t, 4>> neighbours;
  std::span<const double> diagonal;  // units of 1/h^2
  double inv_h2 = 0.0;
};

inline Stencil stencil_of(const GridDomain& g) {
  return {g.neighbours(), g.diagonal(), 1.0 / (g.h() * g.h())};
}

inline constexpr std::size_t kBlock = 4096;

namespace omp {

/// y = A x with (A x)_k = (diag_k x_k - sum of interior neighbours) / h^2.
void apply(const Stencil& a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
double max_abs(std::span<const double> x);
/// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// y = x + beta y
void xpby(std::span<const double> x, double beta, std::span<double> y);
/// z = r / (diag / h^2)
void jacobi(const Stencil& a, std::span<const double> r, std::span<double> z);

}  // namespace omp

namespace reference {

void apply(const Stencil& a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
double max_abs(std::span<const double> x);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);
void jacobi(const Stencil& a, std::span<const double> r, std::span<double> z);

}  // namespace reference

/// Thread count used by the omp kernels (1 when built without OpenMP).
int max_threads();
void set_threads(int n);

}  // namespace torsionlab::kernels
