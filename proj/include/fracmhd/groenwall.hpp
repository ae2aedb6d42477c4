#pragma once

// Numerical check of the discrete fractional Gronwall bound (theta = 0 form)
// for variable-order L1 kernels.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "fracmhd/kernel_checks.hpp"
#include "fracmhd/mittag_leffler.hpp"

namespace fracmhd {

enum class GroenwallPremise {
  Satisfied,
  SizeMismatch,
  NegativeSequence,
  StepTooLarge,
  RecurrenceViolated,
};

struct GroenwallReport {
  GroenwallPremise premise = GroenwallPremise::Satisfied;
  int failed_level = 0;      // level where a premise failed
  double gamma = 0.0;        // comparison exponent nu_*
  double pi_A = 0.0;
  double Lambda = 0.0;
  double max_step = 0.0;     // (2 pi_A Gamma(2-gamma) Lambda)^{-1/gamma}
  bool bound_holds = false;
  double min_slack = std::numeric_limits<double>::infinity();  // min_n (bound_n - v^n)
  double max_ratio = 0.0;                                       // max_n v^n / bound_n
  std::vector<double> bound;                                    // bound_n, n = 1..N
};

/// Checks v^n <= 2 E_g(2 pi_A Lambda t_n^g) (v^0 + max_{k<=n} sum_j P^{(k)}_{k-j} g^j)
/// given the premise sum_k A^{(n)}_{n-k} (v^k - v^{k-1}) <= sum_k lambda_{n-k} v^k + g^n.
/// v has N+1 entries, g and lambda have N entries (g[n-1] = g^n, lambda[l] = lambda_l).
inline GroenwallReport groenwall_check(std::span<const double> v, std::span<const double> g,
                                       std::span<const double> lambda,
                                       const KernelTable& table) {
  GroenwallReport rep;
  const int N = table.levels();
  if (v.size() != static_cast<std::size_t>(N) + 1 || g.size() != static_cast<std::size_t>(N) ||
      lambda.size() != static_cast<std::size_t>(N)) {
    rep.premise = GroenwallPremise::SizeMismatch;
    return rep;
  }
  if (table.is_classical()) throw UsageError("groenwall_check: classical table");
  const auto& profile = *table.profile();
  const auto& grid = table.grid();
  rep.gamma = profile.lower();
  rep.pi_A = comparison_constant(profile.lower(), profile.upper(), grid.horizon());
  for (double l : lambda) {
    if (l < 0.0) {
      rep.premise = GroenwallPremise::NegativeSequence;
      return rep;
    }
    rep.Lambda += l;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0 || (i > 0 && g[i - 1] < 0.0)) {
      rep.premise = GroenwallPremise::NegativeSequence;
      rep.failed_level = static_cast<int>(i);
      return rep;
    }
  }
  rep.max_step = rep.Lambda > 0.0
                     ? std::pow(2.0 * rep.pi_A * gamma_fn(2.0 - rep.gamma) * rep.Lambda,
                                -1.0 / rep.gamma)
                     : std::numeric_limits<double>::infinity();
  if (grid.tau > rep.max_step) {
    rep.premise = GroenwallPremise::StepTooLarge;
    return rep;
  }

  // Premise, with a relative slack for rounding in the two sums.
  for (int n = 1; n <= N; ++n) {
    const KernelRow& row = table.row(n);
    CompensatedSum lhs;
    CompensatedSum rhs;
    double scale = std::abs(g[static_cast<std::size_t>(n - 1)]);
    for (int k = 1; k <= n; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      const double term = row.A(n - k) * (v[ku] - v[ku - 1]);
      lhs.add(term);
      const double r = lambda[static_cast<std::size_t>(n - k)] * v[ku];
      rhs.add(r);
      scale += std::abs(row.A(n - k)) * (std::abs(v[ku]) + std::abs(v[ku - 1])) + std::abs(r);
    }
    rhs.add(g[static_cast<std::size_t>(n - 1)]);
    if (lhs.value() > rhs.value() + 1e-12 * scale) {
      rep.premise = GroenwallPremise::RecurrenceViolated;
      rep.failed_level = n;
      return rep;
    }
  }

  rep.bound_holds = true;
  rep.bound.resize(static_cast<std::size_t>(N));
  double running_forcing = 0.0;
  for (int n = 1; n <= N; ++n) {
    const auto ck = complementary_kernels(table, n);
    CompensatedSum pg;
    for (int j = 1; j <= n; ++j) pg.add(ck.at(j) * g[static_cast<std::size_t>(j - 1)]);
    running_forcing = std::max(running_forcing, pg.value());
    const double ml = mittag_leffler(
        rep.gamma, 2.0 * rep.pi_A * rep.Lambda * std::pow(grid.t(n), rep.gamma));
    const double bound = 2.0 * ml * (v[0] + running_forcing);
    rep.bound[static_cast<std::size_t>(n - 1)] = bound;
    const double vn = v[static_cast<std::size_t>(n)];
    rep.min_slack = std::min(rep.min_slack, bound - vn);
    if (bound > 0.0) rep.max_ratio = std::max(rep.max_ratio, vn / bound);
    if (vn > bound) rep.bound_holds = false;
  }
  return rep;
}

}  // namespace fracmhd
