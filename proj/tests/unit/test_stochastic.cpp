#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "torsionlab/errors.hpp"
#include "torsionlab/stochastic.hpp"
#include "torsionlab/verify/oracles.hpp"

using namespace torsionlab;

TEST(Philox, KnownAnswers) {
  const auto zero = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(zero, (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  const auto ones = Philox4x32::block({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u});
  EXPECT_EQ(ones, (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, StreamsAndRange) {
  Philox4x32 a(5, 0), b(5, 0), c(5, 1), d(5, 0, 1), e(6, 0);
  double mean = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double u = a.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_EQ(u, b.uniform());
    mean += u;
  }
  EXPECT_NEAR(mean / 20000, 0.5, 0.01);
  Philox4x32 f(5, 0);
  const auto x = f();
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
  EXPECT_NE(x, e());
}

TEST(Philox, NormalMoments) {
  Philox4x32 g(11, 3);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double z = g.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.015);
}

TEST(McConfig, Validation) {
  McConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_paths = 10;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = McConfig{};
  c.eps_shell = 0.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(McEstimate, FromAccumulator) {
  McAccumulator a, b;
  for (int k = 0; k < 10; ++k) a.add(k);
  for (int k = 10; k < 20; ++k) b.add(k);
  a.merge(b);
  const McEstimate e = McEstimate::from(a);
  EXPECT_DOUBLE_EQ(e.mean, 9.5);
  EXPECT_NEAR(e.std_error, std::sqrt(35.0 / 20.0), 1e-12);  // sample variance 35, n = 20
  EXPECT_TRUE(e.agrees(9.5 + 2.9 * e.std_error));
  EXPECT_FALSE(e.agrees(9.5 + 3.1 * e.std_error));
}

TEST(HittingTime, SurvivalMatchesErf) {
  for (double a : {0.5, 1.0, 3.0})
    for (double t : {0.01, 0.25, 1.0, 10.0})
      EXPECT_NEAR(hitting_time_survival(a, t), verify::erf_series(a / (2 * std::sqrt(t))), 1e-14);
}

// Property: tau_a has the law of a^2 tau_1.
TEST(HittingTime, ScalingLaw) {
  auto s = sample_hitting_times(2.0, 50000, 17);
  for (double& x : s) x /= 4.0;
  const double ks = ks_statistic(s, [](double t) { return 1.0 - hitting_time_survival(1.0, t); });
  EXPECT_LT(ks, 1.63 / std::sqrt(50000.0));  // 1% level
}

TEST(HittingTime, Deterministic) {
  EXPECT_EQ(sample_hitting_times(1.0, 2000, 3), sample_hitting_times(1.0, 2000, 3));
  EXPECT_NE(sample_hitting_times(1.0, 2000, 3), sample_hitting_times(1.0, 2000, 4));
}

TEST(Survival, IntervalProperties) {
  const double b = 1.0;
  double prev = 1.0;
  for (double t = 0.0; t < 2.0; t += 0.01) {
    const double s = survival_interval(0.3, b, t);
    ASSERT_LE(s, prev + 1e-15);
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, survival_interval_bound(b, t));
    prev = s;
  }
  EXPECT_DOUBLE_EQ(survival_interval(0.3, b, 0.0), 1.0);
  EXPECT_NEAR(survival_interval(0.3, b, 0.5), survival_interval(0.7, b, 0.5), 1e-14);
}

TEST(HalfStrip, ProbabilityShape) {
  const double b = 1.0;
  double prev = 1.0;
  for (double gap : {0.01, 0.1, 0.5, 1.0, 2.0, 4.0}) {
    const Point x{0.5, 1.0 - gap};
    const double q = halfstrip_exit_top_probability(x, 1.0, b);
    EXPECT_LT(q, prev);
    EXPECT_GT(q, 0.0);
    EXPECT_LE(q, halfstrip_bound(x, 1.0, b));
    prev = q;
  }
  // far from the top the decay rate is pi / b in the gap, twice the bound's
  const double q2 = halfstrip_exit_top_probability({0.5, -2.0}, 1.0, b);
  const double q3 = halfstrip_exit_top_probability({0.5, -3.0}, 1.0, b);
  EXPECT_NEAR(std::log(q2 / q3), std::numbers::pi, 1e-3);
  // scale invariance
  EXPECT_NEAR(halfstrip_exit_top_probability({0.3, 0.2}, 1.0, 1.0),
              halfstrip_exit_top_probability({0.6, 0.4}, 2.0, 2.0), 1e-12);
}

TEST(HalfStrip, MonteCarloAgrees) {
  McConfig c;
  c.n_paths = 40000;
  c.seed = 9;
  const Point x{0.25, 0.5};
  const McEstimate e = halfstrip_exit_top_mc(x, 1.0, 1.0, c);
  EXPECT_TRUE(e.agrees(halfstrip_exit_top_probability(x, 1.0, 1.0), 4.0));
}

TEST(DiskExit, Law) {
  const DiskExitTime law;
  EXPECT_NEAR(law.survival(0.0), 1.0, 1e-6);
  EXPECT_LT(law.survival(2.0), 1e-4);
  // E T = 1/4 for the unit disk from its center
  double mean = 0.0;
  const double ds = 1e-4;
  for (double s = ds / 2; s < 4.0; s += ds) mean += law.survival(s) * ds;
  EXPECT_NEAR(mean, 0.25, 1e-4);
  Philox4x32 rng(2, 0);
  double m = 0.0;
  for (int k = 0; k < 50000; ++k) m += law.sample(rng);
  EXPECT_NEAR(m / 50000, 0.25, 0.004);
}

TEST(WalkOnSpheres, DiskAndDeterminism) {
  McConfig c;
  c.n_paths = 20000;
  c.seed = 5;
  const SlitDomain disk = make_regular_polygon(256, 1.0);
  // from the center one jump already lands in the shell of the 256-gon
  const McEstimate center = wos_expected_exit_time(disk, {0.0, 0.0}, c);
  EXPECT_NEAR(center.mean, 0.25, 1e-4);
  const McEstimate e = wos_expected_exit_time(disk, {0.3, 0.2}, c);
  EXPECT_TRUE(e.agrees(verify::disk_torsion(1.0, std::hypot(0.3, 0.2)), 4.0)) << e.mean << " +- " << e.std_error;
  const McEstimate f = wos_expected_exit_time(disk, {0.3, 0.2}, c);
  EXPECT_EQ(e.mean, f.mean);
  EXPECT_EQ(e.std_error, f.std_error);
  EXPECT_THROW(wos_expected_exit_time(disk, {2.0, 0.0}, c), InvalidArgument);
}

TEST(Lemma3, BoundsAndReport) {
  const LemmaThreeFrame f{3.0 / 8, 7.0 / 8, 1.0 / 8};
  EXPECT_NEAR(lemma3_joint_bound(f, {0.4375, 0.875}, 0.0, 100.0), 2.0 * std::numbers::sqrt2, 1e-14);
  const SlitDomain comb = make_comb(8, 0.25);
  const std::vector<Point> pts{{0.4375, 0.2}, {0.4, 0.8}};
  const Lemma3Report r = verify_lemma3(f, comb, pts, comb_spacing(8, 16));
  EXPECT_TRUE(r.pass());
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_EQ(r.checks[0].name, "e65-certificate");
  const std::vector<Point> outside{{0.1, 0.2}};
  EXPECT_THROW(verify_lemma3(f, comb, outside, comb_spacing(8, 16)), InvalidArgument);
}
