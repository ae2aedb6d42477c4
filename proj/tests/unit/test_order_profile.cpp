#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracmhd/order_profile.hpp"

using namespace fracmhd;

TEST(OrderProfile, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(OrderProfile::constant(0.75, 1.0)(0.1), 0.75);
  OrderProfile ramp(LinearRamp{0.6, 0.95, 1.0}, 1.0);
  EXPECT_DOUBLE_EQ(ramp(0.0), 0.6);
  EXPECT_DOUBLE_EQ(ramp(1.0), 0.95);
  EXPECT_DOUBLE_EQ(ramp.lower(), 0.6);
  EXPECT_DOUBLE_EQ(ramp.upper(), 0.95);
  OrderProfile eps(EpsilonLimit{0.1, 1e-10, 0.5}, 0.5);
  EXPECT_DOUBLE_EQ(eps(0.5), 1.0 - 1e-10);
  EXPECT_DOUBLE_EQ(eps(0.0), 1.0 - 0.1 - 1e-10);
}

TEST(OrderProfile, StepTakesRightBranchAtSwitch) {
  OrderProfile step(StepChange{0.9, 0.65, 0.08}, 0.16);
  EXPECT_DOUBLE_EQ(step(0.0799), 0.9);
  EXPECT_DOUBLE_EQ(step(0.08), 0.65);
  EXPECT_DOUBLE_EQ(step.lower(), 0.65);
  EXPECT_DOUBLE_EQ(step.upper(), 0.9);
}

TEST(OrderProfile, SinusoidalExtremesIncludeInteriorPeaks) {
  OrderProfile s(Sinusoidal{0.75, 0.2, 0.5}, 1.0);
  EXPECT_NEAR(s.upper(), 0.95, 1e-15);
  EXPECT_NEAR(s.lower(), 0.55, 1e-15);
  OrderProfile v(Sinusoidal{0.75, 0.15, 0.08}, 0.16);
  EXPECT_NEAR(v.upper(), 0.9, 1e-15);
  EXPECT_NEAR(v.lower(), 0.6, 1e-15);
}

TEST(OrderProfile, SmoothStepBoundsAreEndpoints) {
  OrderProfile s(SmoothStep{0.6, 0.95, 0.4, 0.05}, 1.0);
  EXPECT_NEAR(s(0.4), 0.775, 1e-15);
  EXPECT_NEAR(s.lower(), s(0.0), 0.0);
  EXPECT_NEAR(s.upper(), s(1.0), 0.0);
  EXPECT_GT(s.lower(), 0.6);
  EXPECT_LT(s.upper(), 0.95);
}

TEST(OrderProfile, InvalidRangesRejectedAtConstruction) {
  EXPECT_THROW(OrderProfile::constant(1.0, 1.0), ConfigError);
  EXPECT_THROW(OrderProfile(LinearRamp{0.5, 1.2, 1.0}, 1.0), ConfigError);
  EXPECT_THROW(OrderProfile(Sinusoidal{0.75, 0.3, 1.0}, 1.0), ConfigError);
  EXPECT_THROW(OrderProfile(EpsilonLimit{0.1, 0.0, 0.5}, 0.5), ConfigError);
  EXPECT_THROW(OrderProfile(SmoothStep{0.6, 0.9, 0.5, 0.0}, 1.0), ConfigError);
  EXPECT_THROW(OrderProfile::constant(0.5, 0.0), ConfigError);
}

TEST(OrderProfile, TimeScalingPreservesValues) {
  OrderProfile ramp(LinearRamp{0.6, 0.9, 2.0}, 2.0);
  OrderProfile scaled = ramp.time_scaled(4.0);
  EXPECT_DOUBLE_EQ(scaled.horizon(), 0.5);
  for (double t : {0.0, 0.3, 1.1, 2.0}) EXPECT_NEAR(scaled(t / 4.0), ramp(t), 1e-15);
}

TEST(TimeGrid, HorizonWithinOneUlp) {
  for (int N : {20, 40, 80, 160, 320, 512}) {
    auto g = TimeGrid::from_horizon(0.16, N);
    EXPECT_LE(std::abs(g.horizon() - 0.16), std::nextafter(0.16, 1.0) - 0.16) << N;
  }
}
