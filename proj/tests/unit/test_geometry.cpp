#include <gtest/gtest.h>

#include <cmath>

#include "torsionlab/errors.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/stochastic.hpp"

using namespace torsionlab;

TEST(Geometry, SquareBasics) {
  const SlitDomain sq = make_unit_square();
  EXPECT_DOUBLE_EQ(sq.area(), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_boundary(sq, {0.5, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(distance_to_boundary(sq, {0.1, 0.7}), 0.1);
  EXPECT_EQ(distance_to_boundary(sq, {1.5, 0.5}), 0.0);
  EXPECT_EQ(distance_to_boundary(sq, {1.0, 0.5}), 0.0);
  const Inradius r = inradius(sq, 128);
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  EXPECT_LE(0.5, r.value + r.error_bound);
}

TEST(Geometry, RejectsBadInput) {
  EXPECT_THROW(make_rectangle(0.0, 1.0), InvalidArgument);
  EXPECT_THROW(make_regular_polygon(2, 1.0), InvalidArgument);
  // bow tie
  EXPECT_THROW(SlitDomain({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {}), InvalidArgument);
  // slit leaving the polygon
  EXPECT_THROW(SlitDomain({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0.5, 0.5}, {1.5, 0.5}}}), InvalidArgument);
  EXPECT_THROW(make_comb(0, 0.5), InvalidArgument);
  EXPECT_THROW(make_comb(8, 1.5), InvalidArgument);
}

TEST(Geometry, CombShape) {
  const SlitDomain c = make_comb(8, 0.25);
  EXPECT_EQ(c.slits().size(), 7u);
  EXPECT_DOUBLE_EQ(c.area(), 1.0);
  EXPECT_TRUE(is_simply_connected(c));
  // the teeth are 1/8 wide, the top strip eps tall
  EXPECT_NEAR(distance_to_boundary(c, {1.0 / 16, 0.3}), 1.0 / 16, 1e-15);
  EXPECT_NEAR(distance_to_boundary(c, {0.5, 0.875}), 0.125, 1e-15);
  // both sides of a slit are the same feature
  EXPECT_NEAR(distance_to_boundary(c, {0.125 - 0.01, 0.3}), distance_to_boundary(c, {0.125 + 0.01, 0.3}), 1e-15);
}

TEST(Geometry, FloatingSlitIsNotSimplyConnected) {
  const SlitDomain d({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0.3, 0.5}, {0.7, 0.5}}});
  EXPECT_FALSE(is_simply_connected(d));
  // a chain of slits hanging off the boundary is fine
  const SlitDomain e({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0.5, 0.0}, {0.5, 0.5}}, {{0.5, 0.5}, {0.8, 0.5}}});
  EXPECT_TRUE(is_simply_connected(e));
}

TEST(Geometry, CombThreshold) {
  CombParams p{2.0 / 3.0, 1.0, 8};
  // n^alpha >= 2c and c n^(1-alpha) >= 2
  const int n = p.n_min();
  EXPECT_GE(std::pow(n, p.alpha), 2.0 * p.c);
  EXPECT_GE(p.c * std::pow(n, 1.0 - p.alpha), 2.0 - 1e-12);
  EXPECT_EQ(n, 8);
  EXPECT_FALSE(p.pre_asymptotic());
  EXPECT_TRUE((CombParams{2.0 / 3.0, 1.0, 4}.pre_asymptotic()));
  EXPECT_NEAR(p.eps(), 0.25, 1e-15);
  EXPECT_THROW((CombParams{1.5, 1.0, 8}.validate()), InvalidArgument);
  EXPECT_THROW((CombParams{0.5, -1.0, 8}.validate()), InvalidArgument);
}

TEST(Geometry, CombInradiusBracket) {
  for (int n : {8, 16, 32, 64}) {
    const CombParams p{2.0 / 3.0, 1.0, n};
    const Inradius r = inradius(make_comb(p), 256);
    EXPECT_GE(r.value + r.error_bound, p.eps() / 2) << n;
    EXPECT_LE(r.value, p.eps() + r.error_bound) << n;
  }
}

TEST(Geometry, PolygonApothem) {
  const SlitDomain d = make_regular_polygon(256, 1.0);
  const double apothem = std::cos(std::numbers::pi / 256);
  EXPECT_NEAR(distance_to_boundary(d, {0, 0}), apothem, 1e-14);
  EXPECT_NEAR(d.area(), 0.5 * 256 * std::sin(2 * std::numbers::pi / 256), 1e-12);
}

TEST(Geometry, LemmaFrame) {
  const SlitDomain comb = make_comb(8, 0.25);
  const LemmaThreeFrame f{3.0 / 8, 7.0 / 8, 1.0 / 8};
  EXPECT_NO_THROW(check_frame_inside(comb, f));
  const SlitDomain d = lemma_three_domain(comb, f);
  EXPECT_EQ(d.slits().size(), comb.slits().size() + 3);
  // frame crossing a slit
  EXPECT_THROW(check_frame_inside(comb, LemmaThreeFrame{0.1, 0.5, 0.2}), InvalidArgument);
  EXPECT_THROW((LemmaThreeFrame{0.0, -1.0, 1.0}.validate()), InvalidArgument);
}

// Property: d is 1-Lipschitz, vanishes outside, and only shrinks when slits are added.
TEST(GeometryProperty, LipschitzAndSlitMonotone) {
  Philox4x32 rng(7, 0);
  const SlitDomain sq = make_unit_square();
  const SlitDomain comb = make_comb(16, 0.1);
  for (int k = 0; k < 5000; ++k) {
    const Point x{rng.uniform() * 1.2 - 0.1, rng.uniform() * 1.2 - 0.1};
    const Point y{x.x + 0.05 * (rng.uniform() - 0.5), x.y + 0.05 * (rng.uniform() - 0.5)};
    const double dx = distance_to_boundary(comb, x), dy = distance_to_boundary(comb, y);
    ASSERT_LE(std::abs(dx - dy), norm(x - y) + 1e-14);
    ASSERT_LE(dx, distance_to_boundary(sq, x) + 1e-15);
    ASSERT_GE(dx, 0.0);
  }
}

// Property: distances scale with the domain.
TEST(GeometryProperty, Scaling) {
  Philox4x32 rng(8, 0);
  const SlitDomain small = make_rectangle(2.0, 1.0), big = make_rectangle(6.0, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const Point x{2.0 * rng.uniform(), rng.uniform()};
    ASSERT_NEAR(3.0 * distance_to_boundary(small, x), distance_to_boundary(big, {3 * x.x, 3 * x.y}), 1e-13);
  }
}
