#include <gtest/gtest.h>

#include <cmath>

#include "fracmhd/kernel_checks.hpp"

using namespace fracmhd;

TEST(KernelProperties, HistoryBoundBranches) {
  EXPECT_NEAR(history_sum_bound(0.6, 0.95, 1.0), 20.0, 1e-12);
  // 1/0.05 + (2^0.4 - 1)/0.4, 50-digit reference
  EXPECT_NEAR(history_sum_bound(0.6, 0.95, 2.0), 20.798769776932235648, 1e-12);
}

TEST(KernelProperties, RampTableReportsGamma) {
  auto grid = TimeGrid::from_horizon(1.0, 256);
  KernelTable table(grid, OrderProfile(LinearRamp{0.6, 0.95, 1.0}, 1.0));
  auto rep = kernel_properties_check(table);
  EXPECT_TRUE(*rep.prop_b1);
  EXPECT_TRUE(*rep.prop_b3);
  EXPECT_TRUE(*rep.prop_b2);
  EXPECT_NEAR(rep.gamma, 20.0, 1e-12);
  EXPECT_LT(rep.max_sum_rel_error, 1e-12);
  EXPECT_FALSE(rep.violation.has_value());
}

TEST(KernelProperties, ConstantOrderAlwaysPasses) {
  for (double nu : {0.1, 0.5, 0.9}) {
    auto grid = TimeGrid::from_horizon(2.0, 100);
    KernelTable table(grid, OrderProfile::constant(nu, 2.0));
    EXPECT_TRUE(kernel_properties_check(table).all_pass()) << nu;
  }
}

TEST(KernelAssumptions, ComparisonConstant) {
  // Gamma(0.05) / Gamma(0.4), 50-digit reference
  EXPECT_NEAR(comparison_constant(0.6, 0.95, 1.0), 8.7775856186936322704, 1e-11);
  EXPECT_DOUBLE_EQ(comparison_constant(0.7, 0.7, 3.0), 1.0);
}

TEST(KernelAssumptions, ConstantOrderEqualityInA2) {
  auto grid = TimeGrid::from_horizon(1.0, 64);
  KernelTable table(grid, OrderProfile::constant(0.75, 1.0));
  auto rep = verify_kernel_assumptions(table);
  EXPECT_DOUBLE_EQ(rep.pi_A, 1.0);
  EXPECT_TRUE(*rep.A1);
  EXPECT_TRUE(*rep.A2);
  EXPECT_TRUE(*rep.A3);
  EXPECT_DOUBLE_EQ(rep.rho, 1.0);
}

TEST(KernelAssumptions, StepProfilePasses) {
  auto grid = TimeGrid::from_horizon(0.16, 128);
  KernelTable table(grid, OrderProfile(StepChange{0.9, 0.65, 0.08}, 0.16));
  EXPECT_TRUE(verify_kernel_assumptions(table).all_pass());
  EXPECT_TRUE(kernel_properties_check(table).all_pass());
}

TEST(KernelAssumptions, ComparisonBoundIsNotVacuous) {
  auto grid = TimeGrid::from_horizon(1.0, 32);
  KernelTable table(grid, OrderProfile(LinearRamp{0.3, 0.9, 1.0}, 1.0));
  EXPECT_TRUE(verify_kernel_assumptions(table).all_pass());
  // A low-order diagonal kernel sits below the bound built for nu_* = 0.9.
  KernelTable flat(grid, OrderProfile::constant(0.3, 1.0));
  const double lhs = flat.A(32, 0);
  const double rhs = std::pow(grid.tau, 0.1) / gamma_fn(1.1) / grid.tau;
  EXPECT_LT(lhs, rhs);
}

TEST(Complementary, SingleLevel) {
  auto grid = TimeGrid::from_horizon(1.0, 10);
  KernelTable table(grid, OrderProfile::constant(0.5, 1.0));
  auto ck = complementary_kernels(table, 1);
  EXPECT_DOUBLE_EQ(ck.at(1), grid.tau / table.b(1, 1));
}

TEST(Complementary, IdentityAndSign) {
  auto grid = TimeGrid::from_horizon(1.0, 128);
  KernelTable table(grid, OrderProfile(LinearRamp{0.6, 0.95, 1.0}, 1.0));
  auto s = complementary_summary(table);
  EXPECT_LT(s.max_residual, 1e-10);
  EXPECT_TRUE(s.nonnegative());
  EXPECT_GE(s.remark_slack(), 0.0);
}

TEST(Complementary, BruteForceTriangularSolve) {
  // Independent oracle: forward substitution of the undifferenced system.
  auto grid = TimeGrid::from_horizon(0.5, 20);
  KernelTable table(grid, OrderProfile(Sinusoidal{0.75, 0.15, 0.25}, 0.5));
  const int n = 20;
  std::vector<double> P(n + 1, 0.0);  // P[j] = P^{(n)}_{n-j}
  for (int m = n; m >= 1; --m) {
    double s = 1.0;
    for (int j = m + 1; j <= n; ++j) s -= P[j] * table.A(j, j - m);
    P[m] = s / table.A(m, 0);
  }
  auto ck = complementary_kernels(table, n);
  for (int j = 1; j <= n; ++j) EXPECT_NEAR(ck.at(j) / P[j], 1.0, 1e-10) << j;
}

TEST(Complementary, ColumnPathMatchesRowPath) {
  auto grid = TimeGrid::from_horizon(1.0, 40);
  KernelTable table(grid, OrderProfile(SmoothStep{0.6, 0.95, 0.4, 0.05}, 1.0));
  const detail::KernelColumns cols(table);
  for (int n : {1, 2, 17, 40}) {
    const auto slow = complementary_kernels(table, n);
    const auto fast = detail::complementary_kernels(cols, n);
    ASSERT_EQ(slow.P.size(), fast.P.size());
    for (std::size_t i = 0; i < slow.P.size(); ++i) EXPECT_EQ(slow.P[i], fast.P[i]) << n << " " << i;
    EXPECT_EQ(complementary_residual(table, slow), detail::complementary_residual(cols, fast)) << n;
  }
}

TEST(Complementary, ConstantForcingBound) {
  auto grid = TimeGrid::from_horizon(1.0, 64);
  OrderProfile p(LinearRamp{0.6, 0.95, 1.0}, 1.0);
  KernelTable table(grid, p);
  const double pi_A = comparison_constant(p.lower(), p.upper(), 1.0);
  const double bound = pi_A * gamma_fn(1.0 - p.lower()) * std::pow(1.0, p.lower());
  for (int k = 1; k <= 64; ++k) {
    auto ck = complementary_kernels(table, k);
    double s = 0.0;
    for (double v : ck.P) s += v;
    EXPECT_LE(s, bound) << k;
  }
}
