#include "torsionlab/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "torsionlab/errors.hpp"
#include "torsionlab/kernels.hpp"

namespace torsionlab {

namespace k = kernels::omp;

ScalarField::ScalarField(const GridDomain& grid, std::vector<double> values)
    : grid_(&grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid.num_interior()))
    throw InvalidArgument("field size does not match the grid's unknown count");
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidArgument("field holds a non-finite value");
}

ScalarField ScalarField::constant(const GridDomain& grid, double value) {
  return ScalarField(grid, std::vector<double>(static_cast<std::size_t>(grid.num_interior()), value));
}

double ScalarField::at_node(int id) const {
  const std::int32_t k = grid_->interior_index(id);
  return k >= 0 ? values_[static_cast<std::size_t>(k)] : 0.0;
}

ScalarField apply_laplacian(const GridDomain& grid, const ScalarField& f) {
  if (&f.grid() != &grid) throw InvalidArgument("field belongs to a different grid");
  std::vector<double> y(f.size());
  k::apply(kernels::stencil_of(grid), f.values(), y);
  return ScalarField(grid, std::move(y));
}

SolveStats solve_linear(const GridDomain& grid, std::span<const double> rhs, std::span<double> x,
                        const SolverOptions& opts) {
  const std::size_t n = rhs.size();
  if (n == 0) throw InvalidArgument("grid has no interior nodes");
  if (x.size() != n) throw InvalidArgument("solution and right-hand side sizes differ");
  if (!(opts.tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");

  const auto a = kernels::stencil_of(grid);
  const int cap = opts.max_iterations > 0
                      ? opts.max_iterations
                      : std::max(50, static_cast<int>(50.0 * std::sqrt(static_cast<double>(n))));
  const double bnorm = std::sqrt(k::dot(rhs, rhs));
  SolveStats stats;
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return stats;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  auto true_residual = [&] {
    k::apply(a, x, q);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
    return std::sqrt(k::dot(r, r)) / bnorm;
  };

  double rel = true_residual();
  int it = 0;
  // outer loop restarts from the true residual if the recurrence drifted
  bool breakdown = false;
  while (rel > opts.tol && it < cap && !breakdown) {
    k::jacobi(a, r, z);
    std::copy(z.begin(), z.end(), p.begin());
    double rz = k::dot(r, z);
    while (it < cap) {
      k::apply(a, p, q);
      const double pq = k::dot(p, q);
      if (!(pq > 0.0)) {
        breakdown = true;
        break;
      }
      const double alpha = rz / pq;
      k::axpy(alpha, p, x);
      k::axpy(-alpha, q, r);
      ++it;
      rel = std::sqrt(k::dot(r, r)) / bnorm;
      if (rel <= opts.tol) break;
      k::jacobi(a, r, z);
      const double rz_new = k::dot(r, z);
      k::xpby(z, rz_new / rz, p);
      rz = rz_new;
    }
    rel = true_residual();
  }
  stats.iterations = it;
  stats.relative_residual = rel;
  if (rel > opts.tol) {
    std::ostringstream os;
    os << "conjugate gradients stopped at " << it << " iterations with relative residual " << rel
       << " > " << opts.tol;
    throw SolverFailure(os.str(), it, rel);
  }
  return stats;
}

TorsionSolution solve_torsion(const GridDomain& grid, const SolverOptions& opts) {
  if (!(opts.tol > 0.0 && opts.tol <= 1e-6))
    throw InvalidArgument("torsion tolerance must lie in (0, 1e-6]");
  const std::size_t n = static_cast<std::size_t>(grid.num_interior());
  if (n == 0) throw InvalidArgument("grid has no interior nodes");
  std::vector<double> ones(n, 1.0), v(n, 0.0);
  SolveStats stats = solve_linear(grid, ones, v, opts);

  std::vector<double> av(n);
  k::apply(kernels::stencil_of(grid), v, av);
  const double h2 = grid.h() * grid.h();
  stats.energy = h2 * (0.5 * k::dot(v, av) - k::sum(v));
  return {ScalarField(grid, std::move(v)), stats};
}

EigenResult principal_eigenvalue(const GridDomain& grid, const EigenOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("eigen tolerance must be positive");
  const auto a = kernels::stencil_of(grid);
  const double h = grid.h();

  auto seed = solve_torsion(grid, {opts.inner_tol, 0});
  std::vector<double> x(seed.field.values().begin(), seed.field.values().end());
  const std::size_t n = x.size();
  std::vector<double> ax(n), y(n);

  auto normalise = [&](std::vector<double>& u) {
    const double s = 1.0 / (h * std::sqrt(k::dot(u, u)));
    for (double& e : u) e *= s;
  };
  auto rayleigh = [&](const std::vector<double>& u) {
    k::apply(a, u, ax);
    return k::dot(u, ax) / k::dot(u, u);
  };

  normalise(x);
  double lambda = rayleigh(x);
  SolverOptions inner{opts.inner_tol, 0};
  int outer = 0;
  bool converged = false;
  while (outer < opts.max_outer) {
    // A^{-1} x is close to x / lambda; start there
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] / lambda;
    solve_linear(grid, x, y, inner);
    ++outer;
    normalise(y);
    std::swap(x, y);
    const double next = rayleigh(x);
    const bool done = std::abs(next - lambda) < opts.tol * next;
    lambda = next;
    if (done) {
      converged = true;
      break;
    }
  }

  k::apply(a, x, ax);
  double res2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) res2 += (ax[i] - lambda * x[i]) * (ax[i] - lambda * x[i]);
  const double residual = std::sqrt(res2 / k::dot(x, x)) / lambda;
  if (!converged) {
    std::ostringstream os;
    os << "inverse iteration did not settle in " << opts.max_outer << " steps (lambda=" << lambda
       << ")";
    throw SolverFailure(os.str(), outer, residual);
  }
  if (k::sum(x) < 0.0)
    for (double& e : x) e = -e;
  return {lambda, ScalarField(grid, std::move(x)), residual, outer};
}

FieldNorms field_norms(const ScalarField& f) {
  const double h2 = f.grid().h() * f.grid().h();
  FieldNorms out;
  double l1 = 0.0, l2 = 0.0;
  for (double v : f.values()) {
    l1 += std::abs(v);
    l2 += v * v;
    out.linf = std::max(out.linf, std::abs(v));
  }
  out.l1 = h2 * l1;
  out.l2sq = h2 * l2;
  return out;
}

std::vector<double> cell_values(const ScalarField& f) {
  const GridDomain& g = f.grid();
  const int cx = g.cells_x();
  std::vector<double> out(static_cast<std::size_t>(g.num_cells()));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.cells_y(); ++j)
    for (int i = 0; i < cx; ++i) {
      const double s = f.at_node(g.node_id(i, j)) + f.at_node(g.node_id(i + 1, j)) +
                       f.at_node(g.node_id(i, j + 1)) + f.at_node(g.node_id(i + 1, j + 1));
      out[static_cast<std::size_t>(j * cx + i)] = 0.25 * s;
    }
  return out;
}

double interpolate(const ScalarField& f, Point x) {
  const GridDomain& g = f.grid();
  const double u = (x.x - g.origin().x) / g.h();
  const double w = (x.y - g.origin().y) / g.h();
  if (u < 0.0 || w < 0.0 || u > g.nx() - 1 || w > g.ny() - 1) return 0.0;
  const int i = std::min(static_cast<int>(u), g.nx() - 2);
  const int j = std::min(static_cast<int>(w), g.ny() - 2);
  const double fu = u - i;
  const double fw = w - j;
  return (1 - fu) * (1 - fw) * f.at_node(g.node_id(i, j)) + fu * (1 - fw) * f.at_node(g.node_id(i + 1, j)) +
         (1 - fu) * fw * f.at_node(g.node_id(i, j + 1)) + fu * fw * f.at_node(g.node_id(i + 1, j + 1));
}

}  // namespace torsionlab
