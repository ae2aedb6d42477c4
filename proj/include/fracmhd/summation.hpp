#pragma once

#include <cmath>
#include <utility>

namespace fracmhd {

/// Neumaier-compensated running sum for scalars.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Kahan-compensated running sum for any type with +, - and copy (scalars,
/// Eigen vectors). Terms are expected to arrive in a fixed order so the
/// result is bitwise reproducible.
template <class T>
class KahanAccumulator {
 public:
  explicit KahanAccumulator(T zero) : sum_(zero), comp_(std::move(zero)) {}

  void add(const T& x) {
    T y = x - comp_;
    T t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = std::move(t);
  }

  [[nodiscard]] const T& value() const noexcept { return sum_; }

 private:
  T sum_;
  T comp_;
};

}  // namespace fracmhd
