#pragma once

#include <span>
#include <vector>

#include "torsionlab/grid.hpp"

namespace torsionlab {

/// Real values on the unknowns of a grid; boundary nodes are implicitly 0.
///
/// The field refers to its grid by pointer, so the grid must outlive it.
class ScalarField {
 public:
  /// Throws InvalidArgument on a size mismatch or a non-finite value.
  ScalarField(const GridDomain& grid, std::vector<double> values);

  static ScalarField constant(const GridDomain& grid, double value);

  template <class F>
  static ScalarField sample(const GridDomain& grid, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(grid.num_interior()));
    const auto ids = grid.interior_nodes();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid.node(ids[k]));
    return ScalarField(grid, std::move(v));
  }

  const GridDomain& grid() const { return *grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }
  /// Value at lattice node id (0 off the unknowns).
  double at_node(int id) const;

 private:
  const GridDomain* grid_;
  std::vector<double> values_;
};

struct SolverOptions {
  double tol = 1e-10;       ///< relative residual ||b - A x|| / ||b||
  int max_iterations = 0;   ///< 0 selects 50 sqrt(N)
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  double energy = 0.0;  ///< (1/2)||grad v||^2 - int v, discrete
};

struct TorsionSolution {
  ScalarField field;
  SolveStats stats;
};

/// (-Delta_h f) on the unknowns. Throws InvalidArgument if f lives elsewhere.
ScalarField apply_laplacian(const GridDomain& grid, const ScalarField& f);

/// -Delta_h v = 1 by Jacobi-preconditioned conjugate gradients.
/// Throws SolverFailure at the iteration cap.
TorsionSolution solve_torsion(const GridDomain& grid, const SolverOptions& opts = {});

/// A x = rhs starting from the incoming x. Returns the stats of the solve;
/// `energy` is left 0. Throws SolverFailure at the iteration cap.
SolveStats solve_linear(const GridDomain& grid, std::span<const double> rhs, std::span<double> x,
                        const SolverOptions& opts = {});

struct EigenOptions {
  double tol = 1e-8;        ///< relative drift of successive Rayleigh quotients
  int max_outer = 200;
  double inner_tol = 1e-10;
};

struct EigenResult {
  double lambda1 = 0.0;
  ScalarField field;        ///< positive, h^2 sum phi^2 = 1
  double residual = 0.0;    ///< ||A phi - lambda phi|| / (lambda ||phi||)
  int outer_iterations = 0;
};

/// Smallest eigenvalue by inverse power iteration seeded with the torsion
/// function. Throws SolverFailure when the drift test fails at max_outer.
EigenResult principal_eigenvalue(const GridDomain& grid, const EigenOptions& opts = {});

struct FieldNorms {
  double l1 = 0.0;    ///< h^2 sum |f|
  double linf = 0.0;  ///< max |f|
  double l2sq = 0.0;  ///< h^2 sum f^2
};

FieldNorms field_norms(const ScalarField& f);

/// Per-cell average of the four corner nodes (boundary corners count as 0).
std::vector<double> cell_values(const ScalarField& f);

/// Bilinear interpolation of the nodal field at x (0 outside the lattice).
double interpolate(const ScalarField& f, Point x);

}  // namespace torsionlab
