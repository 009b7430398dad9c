#pragma once

#include <vector>

// Closed forms and series used as independent references. None of these
// call into the solvers they check.

namespace torsionlab::verify {

/// Torsion of the unit square by the double sine series
///   sum_{j,k odd} 16 sin(j pi x) sin(k pi y) / (j k pi^4 (j^2 + k^2))
/// with `terms` odd indices per direction.
double square_torsion_double_series(double x, double y, int terms);

/// Same function from the single series in x with hyperbolic profiles in y:
///   x(1-x)/2 - sum_{k odd} 4 sin(k pi x) cosh(k pi (y - 1/2)) / (k^3 pi^3 cosh(k pi / 2)),
/// summed until the tail is below 1e-15.
double square_torsion_single_series(double x, double y);

/// Values of the single series on the nodes (i/m, j/m), 0 < i,j < m, row-major in j.
std::vector<double> square_torsion_on_lattice(int m);

/// ||v||_1 of the unit square, double series with `terms` odd indices per direction.
double square_torsional_rigidity(int terms);

/// J0 by its power series; accurate for |x| <= 10.
double bessel_j0_series(double x);
/// First positive zero of J0 by bisection on the power series.
double bessel_j0_first_zero();

/// erf from the positive series (2/sqrt pi) e^{-x^2} sum 2^n x^{2n+1} / (1 3 ... (2n+1)).
double erf_series(double x);

/// Sine series for the interval survival, summed directly to 1e-14 relative.
double interval_survival_series(double x1, double b, double t);

/// Ball torsion (R^2 - r^2) / 4.
inline double disk_torsion(double radius, double r) { return 0.25 * (radius * radius - r * r); }

/// ||d^2||_1 of the rectangle with sides a >= b: a b^3 / 12 - b^4 / 24.
inline double rectangle_d2_l1(double a, double b) { return a * b * b * b / 12.0 - b * b * b * b / 24.0; }

/// Exact discrete Dirichlet eigenvalue of the 5-point Laplacian on the unit square.
double square_discrete_lambda1(double h);

}  // namespace torsionlab::verify
