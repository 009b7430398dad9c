#pragma once

#include <optional>
#include <vector>

#include "torsionlab/check.hpp"
#include "torsionlab/constants.hpp"
#include "torsionlab/elliptic.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/grid.hpp"

namespace torsionlab {

struct ConstantsUsed {
  double c_hardy = constants::kHardySimplyConnected;
  double frak_c_surrogate = constants::kTorsionBoundSurrogate;
  double bessel_j0_sq = constants::kBesselJ0Squared;
};

/// Two-sided comparison of the torsion efficiency Phi with the efficiency D
/// of the squared distance function:
///   D / (2 m c_sharp c_hardy) <= Phi <= c_hardy j0^2 D,  m = 2,
/// with c_sharp replaced by its upper surrogate.
struct EfficiencyReport {
  double phi = 0.0;
  double dee = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass_lower = false;
  bool pass_upper = false;
  double h = 0.0;
  ConstantsUsed constants_used;

  bool pass() const { return pass_lower && pass_upper; }
};

/// Midpoint-rule moments of the exact distance function.
struct DistanceMoments {
  double d2_l1 = 0.0;           ///< int d^2
  double inradius = 0.0;        ///< ||d||_inf (sampled lower bound)
  double inradius_error = 0.0;  ///< one-sided sampling bound
  double spacing = 0.0;         ///< quadrature cell size
};

DistanceMoments distance_moments(const SlitDomain& dom, int resolution);
/// Same, reusing the cell-center distances attached to a grid.
DistanceMoments distance_moments(const SlitDomain& dom, const GridDomain& grid);

/// Phi = ||v||_1 / (|Omega| ||v||_inf) of a solved torsion field.
double efficiency(const ScalarField& torsion);
/// Solves the torsion problem at spacing h first.
double efficiency(const SlitDomain& dom, double h, const SolverOptions& opts = {});

/// D = ||d^2||_1 / (|Omega| ||d^2||_inf).
double distance_efficiency(const SlitDomain& dom, int resolution);
double distance_efficiency(const SlitDomain& dom, const DistanceMoments& m);

EfficiencyReport theorem1_bracket(double phi, double dee, double c_hardy, double h);
EfficiencyReport check_theorem1_bracket(const SlitDomain& dom, double c_hardy, double h,
                                        const SolverOptions& opts = {});

/// h^2 w^T A w / (h^2 sum w^2 / d^2): the discrete Dirichlet form (every
/// edge, including edges into the boundary) over the weighted L2 norm.
/// Throws InvalidArgument when w vanishes identically.
double hardy_quotient(const GridDomain& grid, const ScalarField& w);

/// Pointwise and integral certificates relating the torsion function to the
/// distance function and to lambda_1, with c_hardy = 16 and m = 2:
///   e11-upper    ||v||_1 <= c ||d^2||_1
///   e24-lower    ||v||_1 >= ||d^2||_1 / 4
///   e14-upper    ||v||_inf <= c_sharp c ||d||_inf^2
///   e16-lower    ||v||_inf >= ||d||_inf^2 / j0^2
///   e10c-pointwise  v(cell) >= d^2/4 - d h / sqrt 2 at every cell center
///   e2-lower, e2-upper   1 - 1e-6 <= lambda_1 ||v||_inf <= c_sharp + 1e-6
std::vector<Check> torsion_certificates(const ScalarField& torsion, const DistanceMoments& dist,
                                        std::optional<double> lambda1 = std::nullopt);

}  // namespace torsionlab
