#pragma once

// Executable checks of the L1 kernel structure: ordering, sum identity,
// history bound, the comparison assumptions A1-A3 with constant pi_A, and the
// complementary (dual) kernels used by discrete Gronwall arguments.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracmhd/gamma.hpp"
#include "fracmhd/l1_kernel.hpp"
#include "fracmhd/summation.hpp"

namespace fracmhd {

/// (n, k) location of the first violated inequality.
struct KernelViolation {
  int n = 0;
  int k = 0;
  std::string what;
};

struct KernelAssumptionReport {
  double nu_lower = 0.0;  // nu_*
  double nu_upper = 0.0;  // nu^*
  double pi_A = 0.0;
  double gamma = 0.0;     // history-sum bound
  double rho = 1.0;       // max step ratio
  double max_sum_rel_error = 0.0;
  double max_history_sum = 0.0;

  std::optional<bool> prop_b1;  // strict ordering of each row
  std::optional<bool> prop_b3;  // sum identity
  std::optional<bool> prop_b2;  // sum_k b_{k,1} <= gamma
  std::optional<bool> A1;
  std::optional<bool> A2;
  std::optional<bool> A3;
  std::optional<KernelViolation> violation;

  [[nodiscard]] bool all_pass() const {
    for (const auto& f : {prop_b1, prop_b3, prop_b2, A1, A2, A3}) {
      if (f.has_value() && !*f) return false;
    }
    return true;
  }
};

inline constexpr double kSumIdentityTol = 1e-12;
inline constexpr double kComparisonSlack = 1e-12;

/// Explicit bound gamma on sum_{k<=n} b_{k,1}, piecewise in T.
inline double history_sum_bound(double nu_lower, double nu_upper, double horizon) {
  if (horizon <= 1.0) {
    return std::pow(horizon, 1.0 - nu_upper) / (1.0 - nu_upper);
  }
  return 1.0 / (1.0 - nu_upper) +
         (std::pow(horizon, 1.0 - nu_lower) - 1.0) / (1.0 - nu_lower);
}

/// pi_A = Gamma(1-nu^*) / Gamma(1-nu_*) max{1, T^{nu^* - nu_*}}.
inline double comparison_constant(double nu_lower, double nu_upper, double horizon) {
  return gamma_fn(1.0 - nu_upper) / gamma_fn(1.0 - nu_lower) *
         std::max(1.0, std::pow(horizon, nu_upper - nu_lower));
}

/// omega_{1-g}(t) = t^{-g} / Gamma(1-g).
inline double omega_kernel(double g, double t) {
  return std::pow(t, -g) / gamma_fn(1.0 - g);
}

/// Ordering, sum identity and history bound of every row of a fractional table.
inline KernelAssumptionReport kernel_properties_check(const KernelTable& table) {
  if (table.is_classical()) throw UsageError("kernel_properties_check: classical table");
  const auto& profile = *table.profile();
  const auto& grid = table.grid();
  KernelAssumptionReport rep;
  rep.nu_lower = profile.lower();
  rep.nu_upper = profile.upper();
  rep.gamma = history_sum_bound(rep.nu_lower, rep.nu_upper, grid.horizon());
  rep.prop_b1 = true;
  rep.prop_b3 = true;
  rep.prop_b2 = true;

  auto flag = [&rep](std::optional<bool>& f, int n, int k, const char* what) {
    if (*f) {
      f = false;
      if (!rep.violation) rep.violation = KernelViolation{n, k, what};
    }
  };

  CompensatedSum history;
  for (int n = 1; n <= table.levels(); ++n) {
    const KernelRow& row = table.row(n);
    if (!(row.b(1) > 0.0)) flag(rep.prop_b1, n, 1, "b_{n,1} > 0");
    for (int k = 1; k < n; ++k) {
      if (!(row.b(k + 1) > row.b(k))) flag(rep.prop_b1, n, k, "b_{n,k+1} > b_{n,k}");
    }
    CompensatedSum sum;
    for (int k = 1; k <= n; ++k) sum.add(row.b(k));
    const double exact = std::pow(grid.t(n), 1.0 - row.nu) / gamma_fn(2.0 - row.nu);
    const double rel = std::abs(sum.value() - exact) / exact;
    rep.max_sum_rel_error = std::max(rep.max_sum_rel_error, rel);
    if (!(rel <= kSumIdentityTol)) flag(rep.prop_b3, n, 0, "sum identity");

    history.add(row.b(1));
    rep.max_history_sum = std::max(rep.max_history_sum, history.value());
    if (!(history.value() <= rep.gamma)) flag(rep.prop_b2, n, 1, "history bound");
  }
  return rep;
}

/// Assumptions A1 (monotone positive kernels), A2 (comparison with the
/// constant-order kernel of exponent nu_*), A3 (step-ratio bound).
inline KernelAssumptionReport verify_kernel_assumptions(const KernelTable& table) {
  if (table.is_classical()) throw UsageError("verify_kernel_assumptions: classical table");
  const auto& profile = *table.profile();
  const auto& grid = table.grid();
  KernelAssumptionReport rep;
  rep.nu_lower = profile.lower();
  rep.nu_upper = profile.upper();
  rep.pi_A = comparison_constant(rep.nu_lower, rep.nu_upper, grid.horizon());
  rep.gamma = history_sum_bound(rep.nu_lower, rep.nu_upper, grid.horizon());
  rep.A1 = true;
  rep.A2 = true;
  rep.A3 = true;

  const double s_lower = 1.0 - rep.nu_lower;
  const double lower_scale =
      std::pow(grid.tau, s_lower) / gamma_fn(2.0 - rep.nu_lower) / grid.tau;

  for (int n = 1; n <= table.levels(); ++n) {
    const KernelRow& row = table.row(n);
    for (int j = 0; j + 1 < n; ++j) {
      if (!(row.A(j) >= row.A(j + 1))) {
        rep.A1 = false;
        if (!rep.violation) rep.violation = KernelViolation{n, n - j, "A1 ordering"};
      }
    }
    if (!(row.A(n - 1) > 0.0)) {
      rep.A1 = false;
      if (!rep.violation) rep.violation = KernelViolation{n, 1, "A1 positivity"};
    }
    for (int k = 1; k <= n; ++k) {
      // (1/tau) int_{t_{k-1}}^{t_k} omega_{1-nu_*}(t_n - s) ds in closed form
      const double comparison =
          lower_scale * detail::power_increment(n - k, s_lower) / rep.pi_A;
      const double a = row.b(k) / grid.tau;
      if (!(a >= comparison * (1.0 - kComparisonSlack))) {
        rep.A2 = false;
        if (!rep.violation) rep.violation = KernelViolation{n, k, "A2 comparison"};
      }
    }
  }
  // Uniform grid: tau_k / tau_{k+1} = 1.
  rep.rho = 1.0;
  return rep;
}

/// Complementary kernels of one level: P[j-1] = P^{(n)}_{n-j}, j = 1..n.
struct ComplementaryKernels {
  int n = 0;
  std::vector<double> P;

  [[nodiscard]] double at(int j) const { return P[static_cast<std::size_t>(j - 1)]; }
};

/// Solves sum_{j=m}^{n} P^{(n)}_{n-j} A^{(j)}_{j-m} = 1 for m = n, ..., 1 by
/// back-substitution. The differenced form
///   P^{(n)}_{n-m} A^{(m)}_0 = sum_{j>m} P^{(n)}_{n-j} (A^{(j)}_{j-m-1} - A^{(j)}_{j-m})
/// has nonnegative terms under A1 and avoids cancellation.
inline ComplementaryKernels complementary_kernels(const KernelTable& table, int n) {
  if (n < 1 || n > table.levels()) throw UsageError("complementary_kernels: level out of range");
  ComplementaryKernels ck;
  ck.n = n;
  ck.P.assign(static_cast<std::size_t>(n), 0.0);
  const double a0 = table.A(n, 0);
  if (!(a0 != 0.0)) throw NumericError("complementary_kernels: zero diagonal kernel");
  ck.P[static_cast<std::size_t>(n - 1)] = 1.0 / a0;
  for (int m = n - 1; m >= 1; --m) {
    CompensatedSum acc;
    for (int j = m + 1; j <= n; ++j) {
      const KernelRow& row = table.row(j);
      // A^{(j)}_{j-m-1} - A^{(j)}_{j-m} = (b_{j,m+1} - b_{j,m}) / tau
      acc.add(ck.at(j) * (row.b(m + 1) - row.b(m)) / row.tau);
    }
    const double diag = table.A(m, 0);
    if (!(diag != 0.0)) throw NumericError("complementary_kernels: zero diagonal kernel");
    ck.P[static_cast<std::size_t>(m - 1)] = acc.value() / diag;
  }
  return ck;
}

/// max_m |sum_{j=m}^{n} P^{(n)}_{n-j} A^{(j)}_{j-m} - 1|.
inline double complementary_residual(const KernelTable& table, const ComplementaryKernels& ck) {
  double worst = 0.0;
  for (int m = 1; m <= ck.n; ++m) {
    CompensatedSum acc;
    for (int j = m; j <= ck.n; ++j) acc.add(ck.at(j) * table.A(j, j - m));
    worst = std::max(worst, std::abs(acc.value() - 1.0));
  }
  return worst;
}

/// sum_j P^{(k)}_{k-j} omega_{1-g}(t_j), compared against pi_A.
inline double weighted_kernel_sum(const KernelTable& table, const ComplementaryKernels& ck, double g) {
  CompensatedSum acc;
  for (int j = 1; j <= ck.n; ++j) acc.add(ck.at(j) * omega_kernel(g, table.grid().t(j)));
  return acc.value();
}

struct ComplementarySummary {
  double max_residual = 0.0;
  double min_entry = std::numeric_limits<double>::infinity();
  double max_weighted_sum = 0.0;
  double pi_A = 0.0;
  /// pi_A - max_k weighted sum; nonnegative when the bound holds.
  [[nodiscard]] double remark_slack() const { return pi_A - max_weighted_sum; }
  [[nodiscard]] bool nonnegative() const { return min_entry >= 0.0; }
};

namespace detail {

// Kernel values regrouped by the older index m, contiguous in the level j.
struct KernelColumns {
  double tau = 0.0;
  std::vector<std::vector<double>> diff;  // diff[m-1][j-m-1] = b_{j,m+1} - b_{j,m}, j > m
  std::vector<std::vector<double>> A;     // A[m-1][j-m] = A^{(j)}_{j-m}, j >= m

  explicit KernelColumns(const KernelTable& table) : tau(table.grid().tau) {
    const int N = table.levels();
    diff.resize(static_cast<std::size_t>(N));
    A.resize(static_cast<std::size_t>(N));
    for (int m = 1; m <= N; ++m) {
      auto& d = diff[static_cast<std::size_t>(m - 1)];
      auto& a = A[static_cast<std::size_t>(m - 1)];
      for (int j = m; j <= N; ++j) {
        const KernelRow& row = table.row(j);
        a.push_back(table.A(j, j - m));
        if (j > m) d.push_back(row.b(m + 1) - row.b(m));
      }
    }
  }
};

// Same recursion and summation order as complementary_kernels.
inline ComplementaryKernels complementary_kernels(const KernelColumns& cols, int n) {
  ComplementaryKernels ck;
  ck.n = n;
  ck.P.assign(static_cast<std::size_t>(n), 0.0);
  const double a0 = cols.A[static_cast<std::size_t>(n - 1)][0];
  if (!(a0 != 0.0)) throw NumericError("complementary_kernels: zero diagonal kernel");
  ck.P[static_cast<std::size_t>(n - 1)] = 1.0 / a0;
  for (int m = n - 1; m >= 1; --m) {
    const double* d = cols.diff[static_cast<std::size_t>(m - 1)].data();
    const double* p = ck.P.data() + m;  // P at j = m+1
    CompensatedSum acc;
    for (int j = m + 1; j <= n; ++j, ++d, ++p) acc.add(*p * *d / cols.tau);
    const double diag = cols.A[static_cast<std::size_t>(m - 1)][0];
    if (!(diag != 0.0)) throw NumericError("complementary_kernels: zero diagonal kernel");
    ck.P[static_cast<std::size_t>(m - 1)] = acc.value() / diag;
  }
  return ck;
}

inline double complementary_residual(const KernelColumns& cols, const ComplementaryKernels& ck) {
  double worst = 0.0;
  for (int m = 1; m <= ck.n; ++m) {
    const double* a = cols.A[static_cast<std::size_t>(m - 1)].data();
    CompensatedSum acc;
    for (int j = m; j <= ck.n; ++j) acc.add(ck.at(j) * a[j - m]);
    worst = std::max(worst, std::abs(acc.value() - 1.0));
  }
  return worst;
}

}  // namespace detail

/// Complementary kernels for every level 1..N with residual, sign and
/// weighted-sum bound statistics.
inline ComplementarySummary complementary_summary(const KernelTable& table) {
  if (table.is_classical()) throw UsageError("complementary_summary: classical table");
  const auto& profile = *table.profile();
  ComplementarySummary s;
  s.pi_A = comparison_constant(profile.lower(), profile.upper(), table.grid().horizon());
  const detail::KernelColumns cols(table);
  for (int n = 1; n <= table.levels(); ++n) {
    const auto ck = detail::complementary_kernels(cols, n);
    s.max_residual = std::max(s.max_residual, detail::complementary_residual(cols, ck));
    for (double p : ck.P) s.min_entry = std::min(s.min_entry, p);
    s.max_weighted_sum = std::max(s.max_weighted_sum, weighted_kernel_sum(table, ck, profile.lower()));
  }
  return s;
}

}  // namespace fracmhd
