#include <gtest/gtest.h>

#include <cmath>

#include "torsionlab/constants.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/functionals.hpp"
#include "torsionlab/localisation.hpp"
#include "torsionlab/verify/oracles.hpp"

using namespace torsionlab;

TEST(Functionals, SquareEfficiencyAgainstSeries) {
  const double rigidity = verify::square_torsional_rigidity(400);
  const double vmax = verify::square_torsion_single_series(0.5, 0.5);
  EXPECT_NEAR(rigidity, 0.0351, 1e-4);
  const double phi = efficiency(make_unit_square(), 1.0 / 128);
  EXPECT_NEAR(phi, rigidity / vmax, 2e-3);
}

TEST(Functionals, RectangleDistanceMoment) {
  for (double a : {1.0, 4.0, 16.0}) {
    const SlitDomain r = make_rectangle(a, 1.0);
    const DistanceMoments m = distance_moments(r, 256);
    EXPECT_NEAR(m.d2_l1, verify::rectangle_d2_l1(a, 1.0), 1e-5 * a) << a;
    EXPECT_NEAR(m.inradius, 0.5, 1e-12);
    // D lies in (0, 1]
    const double dee = distance_efficiency(r, m);
    EXPECT_GT(dee, 0.0);
    EXPECT_LE(dee, 1.0);
  }
}

TEST(Functionals, GridMomentsMatchDirect) {
  const SlitDomain c = make_comb(8, 0.25);
  const GridDomain g = rasterize(c, comb_spacing(8, 16));
  const DistanceMoments a = distance_moments(c, g), b = distance_moments(c, 128);
  EXPECT_NEAR(a.d2_l1, b.d2_l1, 1e-12);
}

TEST(Functionals, BracketArithmetic) {
  const EfficiencyReport r = theorem1_bracket(0.4, 0.2, 16.0, 0.01);
  EXPECT_NEAR(r.lower, 0.2 / (4.0 * constants::kTorsionBoundSurrogate * 16.0), 1e-15);
  EXPECT_NEAR(r.upper, 16.0 * constants::kBesselJ0Squared * 0.2, 1e-12);
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(theorem1_bracket(1e-6, 0.2, 16.0, 0.01).pass());
}

TEST(Functionals, BracketOnFamilies) {
  for (const SlitDomain& d : {make_unit_square(), make_rectangle(4.0, 1.0), make_comb(8, 0.25)}) {
    const double h = d.slits().empty() ? 1.0 / 64 : comb_spacing(8, 8);
    const EfficiencyReport r = check_theorem1_bracket(d, 16.0, h);
    EXPECT_TRUE(r.pass()) << d.label();
    EXPECT_GT(r.phi, 0.0);
    EXPECT_LE(r.phi, 1.0);
  }
}

TEST(Functionals, EfficiencyOfZeroFieldThrows) {
  const GridDomain g = rasterize(make_unit_square(), 1.0 / 8);
  EXPECT_THROW(efficiency(ScalarField::constant(g, 0.0)), InvalidArgument);
  EXPECT_THROW(hardy_quotient(g, ScalarField::constant(g, 0.0)), InvalidArgument);
}

// Property: the discrete Hardy quotient stays above 1/16 for fields of every shape.
TEST(Functionals, HardyQuotientAboveConstant) {
  const GridDomain g = rasterize(make_comb(8, 0.25), comb_spacing(8, 8));
  const TorsionSolution v = solve_torsion(g);
  EXPECT_GT(hardy_quotient(g, v.field), 1.0 / 16);
  EXPECT_GT(hardy_quotient(g, ScalarField::constant(g, 1.0)), 1.0 / 16);
  const ScalarField tent = ScalarField::sample(g, [](Point p) { return std::min(p.x, 1 - p.x) * p.y; });
  EXPECT_GT(hardy_quotient(g, tent), 1.0 / 16);
  // invariant under scaling of w
  std::vector<double> w2(v.field.values().begin(), v.field.values().end());
  for (double& e : w2) e *= 7.0;
  EXPECT_NEAR(hardy_quotient(g, ScalarField(g, w2)), hardy_quotient(g, v.field), 1e-12);
}

TEST(Functionals, CertificatesOnSquare) {
  const GridDomain g = rasterize(make_unit_square(), 1.0 / 64);
  const TorsionSolution v = solve_torsion(g);
  const auto checks = torsion_certificates(v.field, distance_moments(make_unit_square(), g),
                                           principal_eigenvalue(g).lambda1);
  ASSERT_EQ(checks.size(), 7u);
  for (const Check& c : checks) EXPECT_TRUE(c.pass) << c.name << ' ' << c.lhs << ' ' << c.relation << ' ' << c.rhs;
}

TEST(Localisation, Targets) {
  EXPECT_DOUBLE_EQ(kappa_target(1.0), 0.5);
  EXPECT_NEAR(kappa_target(2.0), 8.0 / 9.0, 1e-15);
  const auto [lo, hi] = comb_efficiency_bracket(2.0 / 3.0, 1.0, 8);
  const double s = std::pow(8.0, -2.0 / 3.0) + std::pow(8.0, 4.0 / 3.0 - 2.0);
  EXPECT_NEAR(lo, s / (3072.0 * constants::kTorsionBoundSurrogate), 1e-15);
  EXPECT_NEAR(hi, s * 64.0 * constants::kBesselJ0Squared / 3.0, 1e-12);
}

TEST(Localisation, SweepConfigValidation) {
  SweepConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_list = {8, 8};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.n_list = {2};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SweepConfig{};
  c.q = 4;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SweepConfig{};
  c.alpha = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Localisation, RatioOfFullMaskIsOne) {
  const GridDomain g = rasterize(make_comb(4, 0.3), comb_spacing(4, 8));
  const TorsionSolution v = solve_torsion(g);
  CellMask all;
  all.cells.assign(static_cast<std::size_t>(g.num_cells()), 1);
  all.count = all.cells.size();
  EXPECT_NEAR(localisation_ratio(v.field, all), 1.0, 1e-12);
  const double r = localisation_ratio(v.field, superlevel_mask(g, 1.0 / 8));
  EXPECT_GT(r, 0.0);
  EXPECT_LT(r, 1.0);
}

TEST(Localisation, SmallSweep) {
  SweepConfig c;
  c.n_list = {4, 8};
  c.q = 8;
  c.cross_sections = true;
  const auto rows = comb_sweep(c);
  ASSERT_EQ(rows.size(), 2u);
  for (const SweepRow& r : rows) {
    ASSERT_TRUE(r.kappa_target.has_value());
    EXPECT_DOUBLE_EQ(*r.kappa_target, 0.5);
    EXPECT_TRUE(r.pass_e40);
    EXPECT_FALSE(r.cross_section.empty());
    EXPECT_GT(r.ratio, 0.0);
  }
  EXPECT_TRUE(rows[0].pre_asymptotic);
  c.alpha = 1.0 / 3.0;
  EXPECT_FALSE(comb_sweep(c)[0].kappa_target.has_value());
}

TEST(Localisation, MassDecomposition) {
  const GridDomain g = rasterize(make_unit_square(), 1.0 / 32);
  const TorsionSolution v = solve_torsion(g);
  const auto rows = mass_decomposition(v.field, {0.05, 0.2, 0.9});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[0].applicable && rows[0].pass);
  EXPECT_TRUE(rows[1].applicable && rows[1].pass);
  EXPECT_FALSE(rows[2].applicable);
  EXPECT_TRUE(rows[2].pass);
  EXPECT_THROW(mass_decomposition(v.field, {0.2, 0.1}), InvalidArgument);
  EXPECT_THROW(mass_decomposition(v.field, {-0.1}), InvalidArgument);
}
