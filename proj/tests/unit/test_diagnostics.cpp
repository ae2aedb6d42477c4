#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracmhd/diagnostics.hpp"
#include "fracmhd/errors.hpp"
#include "fracmhd/mhd/context.hpp"
#include "fracmhd/mhd/problems.hpp"

using namespace fracmhd;
using namespace fracmhd::diagnostics;
using std::numbers::pi;

TEST(ObservedOrder, Examples) {
  EXPECT_DOUBLE_EQ(observed_order(1.0, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(observed_order(3.0, 0.75), 2.0);
  for (int p = -3; p <= 6; ++p) EXPECT_DOUBLE_EQ(observed_order(0.7, 0.7 * std::ldexp(1.0, -p)), p);
  EXPECT_NEAR(observed_order(1.5825e-5, 7.6090e-6), 1.06, 5e-3);
  EXPECT_THROW(observed_order(0.0, 1.0), UsageError);
  EXPECT_THROW(observed_order(1.0, -1.0), UsageError);
}

TEST(Trapezoid, ConstantAndLinear) {
  const std::vector<double> c(101, 2.5);
  EXPECT_NEAR(trapezoid(c, 0.01), 2.5, 1e-14);
  std::vector<double> lin(11);
  for (int i = 0; i <= 10; ++i) lin[i] = 0.1 * i;
  EXPECT_NEAR(trapezoid(lin, 0.1), 0.5, 1e-15);
}

TEST(RelDev, ExamplesAndScaleInvariance) {
  const std::vector<double> ref{1.0, 1.0, 1.0, 1.0};
  const std::vector<double> two{2.0, 2.0, 2.0, 2.0};
  EXPECT_DOUBLE_EQ(rel_dev_L1(ref, ref, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(rel_dev_L1(two, ref, 0.1), 1.0);
  std::vector<double> q{0.3, 1.7, 2.2, 0.4, 0.9};
  std::vector<double> r{0.5, 1.1, 2.0, 0.8, 1.0};
  const double d = rel_dev_L1(q, r, 0.25);
  for (double c : {1e-6, 3.0, 1e8}) {
    std::vector<double> qs = q, rs = r;
    for (auto& v : qs) v *= c;
    for (auto& v : rs) v *= c;
    EXPECT_NEAR(rel_dev_L1(qs, rs, 0.25), d, 1e-14);
  }
  const std::vector<double> zero(4, 0.0);
  EXPECT_THROW(rel_dev_L1(ref, zero, 0.1), NumericError);
  EXPECT_THROW(rel_dev_L1(ref, std::vector<double>{1.0}, 0.1), UsageError);
}

TEST(PhaseDeviation, SignsAndIdentity) {
  std::vector<DiagRecord> ref(5), low(5);
  for (int i = 0; i < 5; ++i) {
    ref[i].K = ref[i].M = ref[i].Z = ref[i].J = 1.0 + i;
    low[i] = ref[i];
    low[i].K *= 0.9;
  }
  const PhaseDeviation same = phase_deviation(ref, ref, 0.1);
  for (double v : same.dI) EXPECT_EQ(v, 0.0);
  const PhaseDeviation dev = phase_deviation(low, ref, 0.1);
  EXPECT_NEAR(dev.dI[kK], -0.1, 1e-14);
  EXPECT_EQ(dev.dI[kM], 0.0);
  EXPECT_NEAR(dev.I[kM], trapezoid(column(ref, kM), 0.1), 1e-15);
}

TEST(EnergyReport, ZeroFields) {
  auto ctx = mhd::FemContext::build(4, fem::Boundary::Periodic);
  const fem::Field z(ctx->vel);
  const DiagRecord r = energy_report(z, z, 0.5);
  EXPECT_EQ(r.t, 0.5);
  for (double v : {r.K, r.M, r.Z, r.J, r.Etot, r.div_u, r.div_B_pre, r.div_B_post}) EXPECT_EQ(v, 0.0);
}

TEST(EnergyReport, VortexConvergesToAnalyticValues) {
  const auto init = mhd::vortex_initial_data();
  double prev_err = 1.0;
  for (int M : {16, 32}) {
    auto ctx = mhd::FemContext::build(M, fem::Boundary::Periodic);
    const DiagRecord r =
        energy_report(fem::interpolate(ctx->vel, init.u0), fem::interpolate(ctx->vel, init.B0), 0.0);
    EXPECT_NEAR(r.K, 0.25, 1e-3);
    EXPECT_NEAR(r.Z, 2 * pi * pi, 0.02 * 2 * pi * pi);
    const double err = std::abs(r.J - 128 * pi * pi);
    EXPECT_LT(err, prev_err * 1e3);
    if (M == 32) EXPECT_LT(err, 0.5 * prev_err);
    prev_err = err;
    EXPECT_DOUBLE_EQ(r.Etot, r.K + r.M);
  }
}

TEST(ClassicalGap, ZeroForEqualRuns) {
  auto ctx = mhd::FemContext::build(4, fem::Boundary::Periodic);
  const auto init = mhd::vortex_initial_data();
  const fem::Field u = fem::interpolate(ctx->vel, init.u0);
  const fem::Field B = fem::interpolate(ctx->vel, init.B0);
  const GapPoint g = classical_gap(u, B, u, B);
  EXPECT_EQ(g.E_u, 0.0);
  EXPECT_EQ(g.E_B, 0.0);
  EXPECT_EQ(g.dK, 0.0);
  EXPECT_EQ(g.dM, 0.0);
}

TEST(ErrorSeries, RunningMaximum) {
  ErrorSeries s;
  s.push(1.0, 0.5);
  s.push(0.2, 0.7);
  s.push(0.4, 0.1);
  EXPECT_EQ(s.summary_u(), 1.0);
  EXPECT_EQ(s.summary_B(), 0.7);
  EXPECT_EQ(s.max_B[1], 0.7);
}
