#pragma once

// Discrete energy inequalities for the L1 operator: the corrected memory
// functional E = Theta - R and the quadratic-form bound
// (Delta phi^n, phi^n) >= 1/2 Delta ||phi^n||^2.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "fracmhd/l1_kernel.hpp"
#include "fracmhd/summation.hpp"

namespace fracmhd {

inline constexpr double kInequalitySlack = 1e-12;

/// Theta_n, R_n, E_n for n = 0..L-1 where L is the number of norms supplied.
struct CorrectedEnergySeries {
  std::vector<double> theta;
  std::vector<double> R;
  std::vector<double> E;
};

/// Incremental form of the corrected functional, fed one squared norm per level.
class CorrectedEnergyTracker {
 public:
  explicit CorrectedEnergyTracker(const KernelTable& table) : table_(&table) {}

  /// Appends ||phi^n||^2 for the next level n (starting at n = 0).
  void push(double sq_norm) {
    q_.push_back(sq_norm);
    const int n = static_cast<int>(q_.size()) - 1;
    if (n == 0) {
      theta_.push_back(0.0);
      R_.push_back(0.0);
      return;
    }
    if (n > table_->levels()) throw UsageError("CorrectedEnergyTracker: beyond table");
    const KernelRow& row = table_->row(n);
    CompensatedSum th;
    for (int k = 1; k <= n; ++k) th.add(row.b(k) * q_[static_cast<std::size_t>(k)]);
    theta_.push_back(0.5 * th.value());

    CompensatedSum dr;
    if (n >= 2) {
      const KernelRow& prev = table_->row(n - 1);
      for (int k = 1; k <= n - 1; ++k) {
        const double delta = row.b(k + 1) - prev.b(k);
        if (delta > 0.0) dr.add(delta * q_[static_cast<std::size_t>(k)]);
      }
    }
    R_.push_back(R_.back() + 0.5 * dr.value());
  }

  [[nodiscard]] int level() const noexcept { return static_cast<int>(q_.size()) - 1; }
  [[nodiscard]] double theta(int n) const { return theta_.at(static_cast<std::size_t>(n)); }
  [[nodiscard]] double R(int n) const { return R_.at(static_cast<std::size_t>(n)); }
  [[nodiscard]] double E(int n) const { return theta(n) - R(n); }
  [[nodiscard]] double sq_norm(int n) const { return q_.at(static_cast<std::size_t>(n)); }
  [[nodiscard]] const std::vector<double>& sq_norms() const noexcept { return q_; }

  [[nodiscard]] CorrectedEnergySeries series() const {
    CorrectedEnergySeries s{theta_, R_, {}};
    s.E.resize(theta_.size());
    for (std::size_t i = 0; i < theta_.size(); ++i) s.E[i] = theta_[i] - R_[i];
    return s;
  }

 private:
  const KernelTable* table_;
  std::vector<double> q_;
  std::vector<double> theta_;
  std::vector<double> R_;
};

inline CorrectedEnergySeries corrected_energy_series(std::span<const double> sq_norms,
                                                     const KernelTable& table) {
  CorrectedEnergyTracker tracker(table);
  for (double q : sq_norms) tracker.push(q);
  return tracker.series();
}

/// Both sides of one per-step inequality lhs >= rhs, with the magnitude used
/// for the relative slack.
struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 0.0;

  [[nodiscard]] bool holds(double slack = kInequalitySlack) const {
    return lhs >= rhs - slack * scale;
  }
  /// (rhs - lhs) / scale; nonpositive when the inequality holds exactly.
  [[nodiscard]] double violation() const {
    return scale > 0.0 ? (rhs - lhs) / scale : rhs - lhs;
  }
};

// (1/tau) sum_k b_{n,k} (q_k + q_{k-1}): size of every term in both inequalities.
inline double inequality_scale(const KernelRow& row, std::span<const double> q) {
  CompensatedSum s;
  for (int k = 1; k <= row.n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    s.add(row.b(k) * (std::abs(q[ku]) + std::abs(q[ku - 1])));
  }
  return s.value() / row.tau;
}

/// Per-step corrected-energy inequality at level n:
/// (Delta phi^n, phi^n) >= (E_n - E_{n-1}) / tau - b_{n,1} ||phi^0||^2 / (2 tau).
/// `inner` is (Delta phi^n, phi^n); the tracker must hold levels 0..n.
inline InequalityCheck corrected_energy_step(const CorrectedEnergyTracker& tracker,
                                             const KernelRow& row, double inner) {
  const int n = row.n;
  if (tracker.level() < n) throw UsageError("corrected_energy_step: tracker behind row");
  InequalityCheck c;
  c.lhs = inner;
  c.rhs = (tracker.E(n) - tracker.E(n - 1)) / row.tau -
          row.b(1) * tracker.sq_norm(0) / (2.0 * row.tau);
  c.scale = std::abs(inner) +
            inequality_scale(row, std::span<const double>(tracker.sq_norms()).first(
                                      static_cast<std::size_t>(n) + 1));
  return c;
}

/// Scalar core of the quadratic-form inequality: `inner` = (Delta phi^n, phi^n),
/// q = ||phi^k||^2 for k = 0..n.
inline InequalityCheck quadratic_form_values(const KernelRow& row, double inner,
                                     std::span<const double> q) {
  if (q.size() != static_cast<std::size_t>(row.n) + 1) {
    throw UsageError("quadratic_form_values: need n+1 squared norms");
  }
  InequalityCheck c;
  c.lhs = inner;
  c.rhs = 0.5 * apply_l1(row, q);
  c.scale = std::abs(inner) + inequality_scale(row, q);
  return c;
}

/// (Delta phi^n, phi^n) >= 1/2 Delta ||phi^n||^2 for a history of vectors and
/// an inner product ip(a, b).
template <class T, class InnerProduct>
InequalityCheck quadratic_form_check(const KernelRow& row, std::span<const T> history,
                             InnerProduct&& ip) {
  const T d = apply_l1(row, history);
  const double inner = ip(d, history.back());
  std::vector<double> q(history.size());
  for (std::size_t k = 0; k < history.size(); ++k) q[k] = ip(history[k], history[k]);
  return quadratic_form_values(row, inner, q);
}

}  // namespace fracmhd
