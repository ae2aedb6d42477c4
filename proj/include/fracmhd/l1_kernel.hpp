#pragma once

// Variable-order L1 weights b_{n,k}, the discrete Caputo operator built from
// them, and the exact Caputo derivative of monomials used as a reference.

#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "fracmhd/errors.hpp"
#include "fracmhd/gamma.hpp"
#include "fracmhd/order_profile.hpp"
#include "fracmhd/summation.hpp"

namespace fracmhd {

/// Weights of one time level. Indexing is 1-based in k: b(k) = b_{n,k}.
struct KernelRow {
  int n = 0;
  double nu = 0.0;
  double tau = 0.0;
  std::vector<double> weights;  // weights[k-1] = b_{n,k}

  [[nodiscard]] double b(int k) const { return weights[static_cast<std::size_t>(k - 1)]; }
  /// Discrete kernel A^{(n)}_j = b_{n,n-j} / tau, j = 0..n-1.
  [[nodiscard]] double A(int j) const { return b(n - j) / tau; }
};

namespace detail {

// (m+1)^s - m^s without cancellation for s close to 0.
inline double power_increment(int m, double s) {
  if (m == 0) return 1.0;
  const double dm = static_cast<double>(m);
  return std::pow(dm, s) * std::expm1(s * std::log1p(1.0 / dm));
}

}  // namespace detail

/// b_{n,k} = [(t_n - t_{k-1})^{1-nu_n} - (t_n - t_k)^{1-nu_n}] / Gamma(2 - nu_n).
inline KernelRow l1_row(const TimeGrid& grid, const OrderProfile& profile, int n) {
  if (n < 1 || n > grid.steps) {
    throw UsageError("l1_row: level out of range");
  }
  KernelRow row;
  row.n = n;
  row.tau = grid.tau;
  row.nu = profile(grid.t(n));
  const double s = 1.0 - row.nu;
  const double scale = std::pow(grid.tau, s) / gamma_fn(2.0 - row.nu);
  row.weights.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    row.weights[static_cast<std::size_t>(k - 1)] =
        scale * detail::power_increment(n - k, s);
  }
  return row;
}

/// The nu -> 1 limit: b_{n,n} = 1 and all older weights vanish (backward Euler).
inline KernelRow classical_row(const TimeGrid& grid, int n) {
  if (n < 1 || n > grid.steps) {
    throw UsageError("classical_row: level out of range");
  }
  KernelRow row;
  row.n = n;
  row.tau = grid.tau;
  row.nu = 1.0;
  row.weights.assign(static_cast<std::size_t>(n), 0.0);
  row.weights.back() = 1.0;
  return row;
}

/// All rows 1..N of a grid, for a fractional profile or the classical limit.
class KernelTable {
 public:
  KernelTable(const TimeGrid& grid, const OrderProfile& profile)
      : grid_(grid), profile_(profile) {
    rows_.reserve(static_cast<std::size_t>(grid.steps));
    for (int n = 1; n <= grid.steps; ++n) rows_.push_back(l1_row(grid, profile, n));
  }

  static KernelTable classical(const TimeGrid& grid) { return KernelTable(grid); }

  [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] const std::optional<OrderProfile>& profile() const noexcept {
    return profile_;
  }
  [[nodiscard]] bool is_classical() const noexcept { return !profile_.has_value(); }
  [[nodiscard]] int levels() const noexcept { return grid_.steps; }

  [[nodiscard]] const KernelRow& row(int n) const {
    if (n < 1 || n > grid_.steps) throw UsageError("KernelTable: level out of range");
    return rows_[static_cast<std::size_t>(n - 1)];
  }
  [[nodiscard]] double b(int n, int k) const { return row(n).b(k); }
  [[nodiscard]] double A(int n, int j) const { return row(n).A(j); }

 private:
  explicit KernelTable(const TimeGrid& grid) : grid_(grid) {
    rows_.reserve(static_cast<std::size_t>(grid.steps));
    for (int n = 1; n <= grid.steps; ++n) rows_.push_back(classical_row(grid, n));
  }

  TimeGrid grid_;
  std::optional<OrderProfile> profile_;
  std::vector<KernelRow> rows_;
};

/// Discrete Caputo derivative (1/tau) sum_k b_{n,k} (phi^k - phi^{k-1}).
/// `history` holds phi^0..phi^n; k runs ascending with compensated summation.
template <class T>
T apply_l1(const KernelRow& row, std::span<const T> history) {
  if (history.size() != static_cast<std::size_t>(row.n) + 1) {
    std::ostringstream os;
    os << "apply_l1: level " << row.n << " needs " << row.n + 1
       << " history entries, got " << history.size();
    throw UsageError(os.str());
  }
  T zero = history[0] - history[0];
  KahanAccumulator<T> acc(zero);
  for (int k = 1; k <= row.n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    acc.add(T(row.b(k) * (history[ku] - history[ku - 1])));
  }
  return T(acc.value() * (1.0 / row.tau));
}

template <class T>
T apply_l1(const KernelRow& row, const std::vector<T>& history) {
  return apply_l1(row, std::span<const T>(history));
}

/// Weight of phi^k (k = 0..n-1) in the known part of the discrete derivative:
/// Delta phi^n = (b_{n,n} phi^n - sum_k w_k phi^k) / tau.
inline std::vector<double> history_weights(const KernelRow& row) {
  std::vector<double> w(static_cast<std::size_t>(row.n), 0.0);
  w[0] = row.b(1);
  for (int k = 1; k <= row.n - 1; ++k) {
    w[static_cast<std::size_t>(k)] = row.b(k + 1) - row.b(k);
  }
  return w;
}

/// Exact variable-order Caputo derivative of t^m at observation time t:
/// Gamma(m+1) / Gamma(m+1-nu(t)) t^{m-nu(t)}.
inline double caputo_monomial(const OrderProfile& profile, double m, double t) {
  if (m < 1.0) throw UsageError("caputo_monomial: exponent must be >= 1");
  if (t <= 0.0) return 0.0;
  const double nu = profile(t);
  return gamma_fn(m + 1.0) / gamma_fn(m + 1.0 - nu) * std::pow(t, m - nu);
}

/// Order prefactor theta^{nu - 1} of the dimensional model.
inline double order_prefactor(double theta, double nu) {
  return std::pow(theta, nu - 1.0);
}

}  // namespace fracmhd
