#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "torsionlab/elliptic.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/grid.hpp"
#include "torsionlab/kernels.hpp"
#include "torsionlab/stochastic.hpp"
#include "torsionlab/verify/oracles.hpp"

using namespace torsionlab;
using std::numbers::pi;

TEST(Raster, SquareCounts) {
  const GridDomain g = rasterize(make_unit_square(), 1.0 / 16);
  EXPECT_EQ(g.nx(), 17);
  EXPECT_EQ(g.num_interior(), 15 * 15);
  EXPECT_TRUE(g.aligned());
  EXPECT_THROW(rasterize(make_unit_square(), 0.3), InvalidArgument);
}

TEST(Raster, CombSlitsOnGridLines) {
  const GridDomain g = rasterize(make_comb(8, 0.25), comb_spacing(8, 8));
  EXPECT_TRUE(g.aligned());
  // slit nodes are Dirichlet: 7 slits with 1 - eps = 3/4 of 64 rows each, plus the bottom node
  const int slit_nodes = 7 * (48 - 1 + 1);
  EXPECT_EQ(g.num_interior(), 63 * 63 - slit_nodes);
  // a slit-aligned spacing that misses the slits is rejected
  EXPECT_THROW(rasterize(make_comb(8, 0.25), 1.0 / 12), InvalidArgument);
}

TEST(Raster, PolygonUsesCutDiagonal) {
  const GridDomain g = rasterize(make_regular_polygon(64, 1.0), 1.0 / 32);
  EXPECT_FALSE(g.aligned());
  for (double d : g.diagonal()) EXPECT_GE(d, 4.0);
}

TEST(Kernels, OmpMatchesReference) {
  const GridDomain g = rasterize(make_comb(16, 0.2), comb_spacing(16, 8));
  const auto a = kernels::stencil_of(g);
  const std::size_t n = static_cast<std::size_t>(g.num_interior());
  Philox4x32 rng(3, 0);
  std::vector<double> x(n), y(n);
  for (auto& e : x) e = rng.uniform() - 0.5;
  for (auto& e : y) e = rng.uniform() - 0.5;
  std::vector<double> y1(n), y2(n);
  kernels::omp::apply(a, x, y1);
  kernels::reference::apply(a, x, y2);
  EXPECT_EQ(y1, y2);
  EXPECT_NEAR(kernels::omp::dot(x, y), kernels::reference::dot(x, y), 1e-12);
  EXPECT_NEAR(kernels::omp::sum(x), kernels::reference::sum(x), 1e-12);
  EXPECT_EQ(kernels::omp::max_abs(x), kernels::reference::max_abs(x));
  auto z1 = y, z2 = y;
  kernels::omp::axpy(0.3, x, z1);
  kernels::reference::axpy(0.3, x, z2);
  EXPECT_EQ(z1, z2);
  kernels::omp::xpby(x, -0.7, z1);
  kernels::reference::xpby(x, -0.7, z2);
  EXPECT_EQ(z1, z2);
  kernels::omp::jacobi(a, x, z1);
  kernels::reference::jacobi(a, x, z2);
  EXPECT_EQ(z1, z2);
}

TEST(Kernels, ReductionsIndependentOfThreadCount) {
  std::vector<double> x(100003);
  Philox4x32 rng(4, 0);
  for (auto& e : x) e = rng.uniform();
  const int before = kernels::max_threads();
  kernels::set_threads(1);
  const double s1 = kernels::omp::dot(x, x);
  kernels::set_threads(4);
  const double s4 = kernels::omp::dot(x, x);
  kernels::set_threads(before);
  EXPECT_EQ(s1, s4);
}

TEST(Torsion, SquareAgainstSeries) {
  const int m = 32;
  const GridDomain g = rasterize(make_unit_square(), 1.0 / m);
  const TorsionSolution s = solve_torsion(g);
  EXPECT_LE(s.stats.relative_residual, 1e-10);
  const auto exact = verify::square_torsion_on_lattice(m);
  double err = 0.0;
  for (std::size_t k = 0; k < exact.size(); ++k) err = std::max(err, std::abs(s.field[k] - exact[k]));
  EXPECT_LT(err, 1e-3);
  // residual of the discrete equation itself
  const ScalarField lap = apply_laplacian(g, s.field);
  for (double v : lap.values()) ASSERT_NEAR(v, 1.0, 1e-7);
}

TEST(Torsion, PositiveAndSymmetric) {
  const int m = 40;
  const GridDomain g = rasterize(make_unit_square(), 1.0 / m);
  const TorsionSolution s = solve_torsion(g);
  for (double v : s.field.values()) ASSERT_GT(v, 0.0);
  for (int j = 1; j < m; ++j)
    for (int i = 1; i < m; ++i) {
      const double a = s.field.at_node(g.node_id(i, j));
      ASSERT_NEAR(a, s.field.at_node(g.node_id(m - i, j)), 1e-11);
      ASSERT_NEAR(a, s.field.at_node(g.node_id(j, i)), 1e-11);
    }
}

// Property: v scales like length^2.
TEST(Torsion, ScalingInvariance) {
  const GridDomain g1 = rasterize(make_rectangle(2.0, 1.0), 1.0 / 16);
  const GridDomain g3 = rasterize(make_rectangle(6.0, 3.0), 3.0 / 16);
  const TorsionSolution a = solve_torsion(g1), b = solve_torsion(g3);
  ASSERT_EQ(a.field.size(), b.field.size());
  for (std::size_t k = 0; k < a.field.size(); ++k) ASSERT_NEAR(9.0 * a.field[k], b.field[k], 1e-9);
}

TEST(Torsion, DiskCenter) {
  const GridDomain g = rasterize(make_regular_polygon(256, 1.0), 1.0 / 64);
  const TorsionSolution s = solve_torsion(g);
  EXPECT_NEAR(interpolate(s.field, {0, 0}), verify::disk_torsion(1.0, 0.0), 0.0025);
  EXPECT_NEAR(interpolate(s.field, {0.5, 0}), verify::disk_torsion(1.0, 0.5), 0.0025);
}

TEST(Torsion, IterationCapThrows) {
  const GridDomain g = rasterize(make_unit_square(), 1.0 / 64);
  SolverOptions o;
  o.max_iterations = 3;
  EXPECT_THROW(solve_torsion(g, o), SolverFailure);
}

TEST(Field, Validation) {
  const GridDomain g = rasterize(make_unit_square(), 1.0 / 8);
  EXPECT_THROW(ScalarField(g, std::vector<double>(3)), InvalidArgument);
  std::vector<double> bad(static_cast<std::size_t>(g.num_interior()), 1.0);
  bad[5] = NAN;
  EXPECT_THROW(ScalarField(g, bad), InvalidArgument);
  const GridDomain other = rasterize(make_unit_square(), 1.0 / 16);
  EXPECT_THROW(apply_laplacian(other, ScalarField::constant(g, 1.0)), InvalidArgument);
}

TEST(Field, NormsAndCells) {
  const GridDomain g = rasterize(make_unit_square(), 1.0 / 8);
  const ScalarField one = ScalarField::constant(g, 1.0);
  const FieldNorms n = field_norms(one);
  EXPECT_DOUBLE_EQ(n.linf, 1.0);
  EXPECT_NEAR(n.l1, 49.0 / 64.0, 1e-15);
  const auto cv = cell_values(one);
  EXPECT_EQ(cv.size(), 64u);
  EXPECT_DOUBLE_EQ(cv[0], 0.25);   // corner cell: one interior corner
  EXPECT_DOUBLE_EQ(cv[9], 1.0);
  EXPECT_DOUBLE_EQ(interpolate(one, {0.5, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(interpolate(one, {2.0, 0.5}), 0.0);
}

TEST(Eigen, SquareDiscreteExact) {
  for (int m : {16, 32}) {
    const GridDomain g = rasterize(make_unit_square(), 1.0 / m);
    const EigenResult e = principal_eigenvalue(g);
    EXPECT_NEAR(e.lambda1, verify::square_discrete_lambda1(1.0 / m), 1e-7 * e.lambda1);
    EXPECT_LT(e.residual, 1e-3);  // eigenvector error goes like the square root of the drift
    for (double v : e.field.values()) ASSERT_GT(v, 0.0);
  }
}

// Property: lambda_1 ||v||_inf >= 1 on every domain.
TEST(Eigen, TorsionProductLowerBound) {
  for (const SlitDomain& d : {make_unit_square(), make_rectangle(4.0, 1.0), make_comb(8, 0.25)}) {
    const double h = d.slits().empty() ? 1.0 / 32 : comb_spacing(8, 8);
    const GridDomain g = rasterize(d, h);
    const double lam = principal_eigenvalue(g).lambda1;
    const double vmax = field_norms(solve_torsion(g).field).linf;
    EXPECT_GE(lam * vmax, 1.0 - 1e-6) << d.label();
    EXPECT_LE(lam * vmax, 8.158883083359672) << d.label();
  }
}
