#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "fracmhd/l1_kernel.hpp"

using namespace fracmhd;

TEST(L1Row, SingleWeightMatchesOracle) {
  auto grid = TimeGrid::from_horizon(1.0, 10);
  auto row = l1_row(grid, OrderProfile::constant(0.5, 1.0), 1);
  // sqrt(0.1) / Gamma(1.5), 50-digit reference
  EXPECT_NEAR(row.b(1), 0.35682482323055422291, 1e-15);
  std::vector<double> h{0.0, 1.0};
  EXPECT_NEAR(apply_l1(row, h), 3.5682482323055422291, 1e-14);
}

TEST(L1Row, SumIdentity) {
  auto grid = TimeGrid::from_horizon(1.0, 4);
  auto row = l1_row(grid, OrderProfile::constant(0.5, 1.0), 4);
  double s = 0.0;
  for (int k = 1; k <= 4; ++k) s += row.b(k);
  EXPECT_NEAR(s, 1.1283791670955125739, 1e-14);
}

TEST(L1Row, StrictlyIncreasing) {
  auto grid = TimeGrid::from_horizon(1.0, 200);
  for (double nu : {0.1, 0.5, 0.95, 1.0 - 1e-10}) {
    auto row = l1_row(grid, OrderProfile::constant(nu, 1.0), 200);
    for (int k = 1; k < 200; ++k) ASSERT_GT(row.b(k + 1), row.b(k)) << nu << " " << k;
    EXPECT_GT(row.b(1), 0.0);
  }
}

TEST(L1Row, PowerIncrementStableNearOrderOne) {
  // (m+1)^s - m^s ~ s log(1 + 1/m) for tiny s
  const double s = 1e-10;
  for (int m : {1, 10, 1000}) {
    const double expected = s * std::log1p(1.0 / m);
    EXPECT_NEAR(detail::power_increment(m, s) / expected, 1.0, 1e-8);
  }
}

TEST(L1Apply, ConstantHistoryGivesZero) {
  auto grid = TimeGrid::from_horizon(1.0, 16);
  KernelTable table(grid, OrderProfile(LinearRamp{0.6, 0.95, 1.0}, 1.0));
  std::vector<double> h(17, 3.25);
  EXPECT_EQ(apply_l1(table.row(16), h), 0.0);
}

TEST(L1Apply, LinearHistoryIsExact) {
  OrderProfile p(SmoothStep{0.6, 0.95, 0.4, 0.05}, 1.0);
  auto grid = TimeGrid::from_horizon(1.0, 64);
  KernelTable table(grid, p);
  std::vector<double> h{0.0};
  for (int n = 1; n <= 64; ++n) {
    h.push_back(grid.t(n));
    const double exact = caputo_monomial(p, 1.0, grid.t(n));
    EXPECT_NEAR(apply_l1(table.row(n), h) / exact, 1.0, 1e-13) << n;
  }
}

TEST(L1Apply, LengthMismatchIsUsageError) {
  auto grid = TimeGrid::from_horizon(1.0, 4);
  auto row = l1_row(grid, OrderProfile::constant(0.5, 1.0), 3);
  std::vector<double> h{0.0, 1.0};
  EXPECT_THROW(apply_l1(row, h), UsageError);
}

TEST(L1Apply, WorksOnVectors) {
  auto grid = TimeGrid::from_horizon(1.0, 8);
  auto row = l1_row(grid, OrderProfile::constant(0.3, 1.0), 8);
  std::vector<Eigen::VectorXd> h;
  std::vector<double> a;
  std::vector<double> b;
  for (int k = 0; k <= 8; ++k) {
    const double t = grid.t(k);
    h.push_back(Eigen::Vector2d(t * t, std::sin(t)));
    a.push_back(t * t);
    b.push_back(std::sin(t));
  }
  const Eigen::VectorXd d = apply_l1(row, h);
  EXPECT_NEAR(d[0], apply_l1(row, a), 1e-14);
  EXPECT_NEAR(d[1], apply_l1(row, b), 1e-14);
}

TEST(L1Apply, HistoryWeightsSplitMatchesDirectForm) {
  auto grid = TimeGrid::from_horizon(1.0, 12);
  auto row = l1_row(grid, OrderProfile(LinearRamp{0.6, 0.95, 1.0}, 1.0), 12);
  std::vector<double> h;
  for (int k = 0; k <= 12; ++k) h.push_back(std::cos(3.0 * k));
  const auto w = history_weights(row);
  double known = 0.0;
  for (int k = 0; k < 12; ++k) known += w[static_cast<std::size_t>(k)] * h[static_cast<std::size_t>(k)];
  const double split = (row.b(12) * h[12] - known) / row.tau;
  EXPECT_NEAR(split, apply_l1(row, h), 1e-12);
}

TEST(L1Apply, QuarticTruncationIsFirstOrderWhereOrderIsHigh) {
  // Error for smooth t^4 behaves like tau^{2-nu}; at t = 1 nu = 0.95.
  OrderProfile p(LinearRamp{0.6, 0.95, 1.0}, 1.0);
  const double exact = caputo_monomial(p, 4.0, 1.0);
  double previous = 0.0;
  for (int N : {40, 80, 160, 320}) {
    auto grid = TimeGrid::from_horizon(1.0, N);
    auto row = l1_row(grid, p, N);
    std::vector<double> h;
    for (int k = 0; k <= N; ++k) h.push_back(std::pow(grid.t(k), 4));
    const double err = std::abs(apply_l1(row, h) - exact);
    if (previous > 0.0) {
      const double ratio = previous / err;
      EXPECT_GE(ratio, 1.8) << N;
      EXPECT_LE(ratio, 2.2) << N;
    }
    previous = err;
  }
}

TEST(CaputoMonomial, ReferenceValues) {
  auto p = OrderProfile::constant(0.5, 1.0);
  EXPECT_NEAR(caputo_monomial(p, 1.0, 1.0), 1.1283791670955125739, 1e-14);
  EXPECT_EQ(caputo_monomial(p, 4.0, 0.0), 0.0);
  auto near_one = OrderProfile::constant(1.0 - 1e-8, 1.0);
  EXPECT_NEAR(caputo_monomial(near_one, 4.0, 0.7), 4.0 * std::pow(0.7, 3), 1e-6);
}

TEST(KernelTable, ClassicalRowsAreBackwardEuler) {
  auto grid = TimeGrid::from_horizon(1.0, 5);
  auto table = KernelTable::classical(grid);
  EXPECT_TRUE(table.is_classical());
  std::vector<double> h{1.0, 4.0, 2.0, 7.0};
  const auto& row = table.row(3);
  EXPECT_DOUBLE_EQ(apply_l1(row, h), (7.0 - 2.0) / 0.2);
}
