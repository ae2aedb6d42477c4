#include <gtest/gtest.h>

#include <cmath>

#include "fracmhd/gamma.hpp"
#include "fracmhd/summation.hpp"

using fracmhd::gamma_fn;

namespace {

struct Spot {
  double x;
  double value;
};

// 50-digit reference values (mpmath), rounded to 25 significant digits.
constexpr Spot kSpots[] = {
    {0.05, 19.47008531125551286404732},
    {0.1, 9.513507698668731836292487},
    {0.4, 2.218159543757688223059054},
    {0.5, 1.772453850905516027298167},
    {1.05, 0.973504265562775643202366},
    {1.5, 0.8862269254527580136490837},
    {2.5, 1.329340388179137020473626},
    {3.3, 2.683437381955768793596327},
    {7.25, 1155.381013919989687202704},
    {25.5, 3086770540528696782770882.0},
    {100.5, 9.32096310408271660834911e+156},
    {170.5, 5.56209241455999961070581e+305},
};

}  // namespace

TEST(Gamma, MatchesHighPrecisionTable) {
  for (const auto& s : kSpots) {
    EXPECT_NEAR(gamma_fn(s.x) / s.value, 1.0, 1e-13) << "x = " << s.x;
  }
}

TEST(Gamma, AgreesWithLibmOnGrid) {
  double worst = 0.0;
  for (double x = 0.01; x < 171.0; x += 0.0137) {
    worst = std::max(worst, std::abs(gamma_fn(x) / std::tgamma(x) - 1.0));
  }
  EXPECT_LT(worst, 1e-13);
}

TEST(Gamma, IntegersAreFactorials) {
  double f = 1.0;
  for (int n = 1; n <= 20; ++n) {
    EXPECT_NEAR(gamma_fn(n) / f, 1.0, 1e-14) << n;
    f *= n;
  }
}

TEST(Gamma, PolesAndOverflowThrow) {
  EXPECT_THROW(gamma_fn(0.0), fracmhd::NumericError);
  EXPECT_THROW(gamma_fn(-3.0), fracmhd::NumericError);
  EXPECT_THROW(gamma_fn(200.0), fracmhd::NumericError);
  EXPECT_THROW(gamma_fn(std::nan("")), fracmhd::NumericError);
}

TEST(Summation, CompensatedSumRecoversSmallTerms) {
  fracmhd::CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-17);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-14, 1e-20);
}
