#pragma once

#include <optional>
#include <vector>

#include "torsionlab/elliptic.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/grid.hpp"

namespace torsionlab {

/// h^2 sum over masked cells of the cell-averaged torsion, over ||v||_1.
/// The mask must come from the field's own grid.
double localisation_ratio(const ScalarField& torsion, const CellMask& mask);
/// Rasterises and solves first.
double localisation_ratio(const SlitDomain& dom, const CellMask& mask, double h,
                          const SolverOptions& opts = {});

struct SweepConfig {
  double alpha = 2.0 / 3.0;
  double c = 1.0;
  std::vector<int> n_list{8, 16, 32, 64};
  int q = 16;  ///< h = 1/(n q)
  double tol = 1e-10;
  bool cross_sections = false;

  /// Throws InvalidArgument: n >= 4 strictly ascending, q >= 8, alpha in (0,1), c > 0.
  void validate() const;
};

/// Sample of the horizontal cut x2 = 1 - eps/2 through the comb's top strip.
struct CrossSectionPoint {
  double x = 0.0;
  double d = 0.0;
  double v = 0.0;
};

struct SweepRow {
  int n = 0;
  double eps = 0.0;
  double h = 0.0;
  int unknowns = 0;
  int iterations = 0;
  double phi = 0.0;
  double ratio = 0.0;         ///< int_{A_n} v / ||v||_1, A_n = {d >= 1/(2n)}
  double mask_measure = 0.0;  ///< |A_n|
  double lower_e40 = 0.0;
  double upper_e40 = 0.0;
  bool pass_e40 = false;
  bool pre_asymptotic = false;
  std::optional<double> kappa_target;  ///< c^3 / (1 + c^3) when alpha = 2/3
  double d2_fraction = 0.0;            ///< int_{A_n} d^2 / int d^2
  double ratio_bound = 0.0;            ///< (2 m c_hardy)^{1/2} d2_fraction^{1/2}
  bool pass_ratio_bound = false;
  std::vector<CrossSectionPoint> cross_section;
};

/// The comb efficiency bracket (cn^-a + c^-2 n^(2a-2)) * [1/(3072 c_sharp), 64 j0^2 / 3].
std::pair<double, double> comb_efficiency_bracket(double alpha, double c, int n);

/// c^3 / (1 + c^3).
double kappa_target(double c);

/// One row per n, in n order. Rows with n < N_{alpha,c} are flagged
/// pre-asymptotic; their e40 result is still computed. Any solver failure
/// aborts the whole sweep.
std::vector<SweepRow> comb_sweep(const SweepConfig& cfg);

/// Both sides of the near-boundary mass estimate
///   int_{d<eta} v / int_{d>=eta} v <= X + X^{1/2},
///   X = 2 m c_hardy eta^2 |Omega| / int_{d>=eta} d^2.
struct MassRow {
  double eta = 0.0;
  bool applicable = false;  ///< false when {d >= eta} carries no mass
  double inner = 0.0;       ///< int_{d<eta} v
  double outer = 0.0;       ///< int_{d>=eta} v
  double d2_outer = 0.0;    ///< int_{d>=eta} d^2
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;  ///< true for rows that are not applicable
};

std::vector<MassRow> mass_decomposition(const ScalarField& torsion, const std::vector<double>& eta_list,
                                        double c_hardy = 16.0);
std::vector<MassRow> mass_decomposition(const SlitDomain& dom, double h,
                                        const std::vector<double>& eta_list,
                                        const SolverOptions& opts = {});

}  // namespace torsionlab
