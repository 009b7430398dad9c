#include <gtest/gtest.h>

#include <cmath>

#include "torsionlab/constants.hpp"
#include "torsionlab/stochastic.hpp"
#include "torsionlab/verify/oracles.hpp"

using namespace torsionlab;
using namespace torsionlab::verify;

TEST(Oracles, SquareSeriesAgree) {
  for (double x : {0.1, 0.3, 0.5})
    for (double y : {0.2, 0.5, 0.9})
      EXPECT_NEAR(square_torsion_single_series(x, y), square_torsion_double_series(x, y, 1500), 2e-8);
  EXPECT_NEAR(square_torsion_single_series(0.5, 0.5), 0.0736713532, 1e-9);
  EXPECT_NEAR(square_torsion_single_series(0.0, 0.5), 0.0, 1e-15);
}

TEST(Oracles, BesselAndErf) {
  EXPECT_NEAR(bessel_j0_first_zero(), constants::kBesselJ0, 1e-13);
  EXPECT_NEAR(bessel_j0_series(1.0), std::cyl_bessel_j(0.0, 1.0), 1e-14);
  for (double x : {0.0, 0.1, 0.5, 1.0, 2.0, 3.5, 7.0}) EXPECT_NEAR(erf_series(x), std::erf(x), 1e-14) << x;
  EXPECT_NEAR(erf_series(-0.7), -std::erf(0.7), 1e-14);
}

// Property: the image and sine forms of the interval survival agree on both sides of the switch.
TEST(Oracles, SurvivalImagesEqualSines) {
  for (double b : {0.5, 1.0, 3.0})
    for (double f : {0.02, 0.3, 0.5, 0.81})
      for (double s : {1e-4, 0.01, 0.2, 0.9, 0.99, 1.0, 1.01, 2.0, 6.0}) {
        const double t = s * b * b / (M_PI * M_PI);
        ASSERT_NEAR(survival_interval(f * b, b, t), interval_survival_series(f * b, b, t), 1e-11)
            << b << ' ' << f << ' ' << s;
      }
}
