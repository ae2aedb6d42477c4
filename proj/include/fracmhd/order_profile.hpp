#pragma once

// Time-dependent fractional orders nu(t) in (0, 1).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "fracmhd/errors.hpp"

namespace fracmhd {

/// nu(t) = value
struct ConstantOrder {
  double value;
};

/// nu(t) = start + (end - start) t / horizon
struct LinearRamp {
  double start;
  double end;
  double horizon;
};

/// nu(t) = before for t < switch_time, after for t >= switch_time
struct StepChange {
  double before;
  double after;
  double switch_time;
};

/// nu(t) = mean + amplitude sin(2 pi t / period)
struct Sinusoidal {
  double mean;
  double amplitude;
  double period;
};

/// nu(t) = start + (end - start)(1 + tanh((t - center) / width)) / 2
struct SmoothStep {
  double start;
  double end;
  double center;
  double width;
};

/// nu(t) = 1 - eps (1 - t / horizon) - delta
struct EpsilonLimit {
  double eps;
  double delta;
  double horizon;
};

using OrderParams = std::variant<ConstantOrder, LinearRamp, StepChange,
                                 Sinusoidal, SmoothStep, EpsilonLimit>;

/// A validated order profile on [0, T]. Construction fails with ConfigError
/// if the profile leaves (0, 1) anywhere on [0, T].
class OrderProfile {
 public:
  OrderProfile(OrderParams params, double horizon)
      : params_(params), horizon_(horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
      throw ConfigError("order profile: horizon must be positive");
    }
    check_parameters();
    const auto [lo, hi] = extremes();
    lower_ = lo;
    upper_ = hi;
    if (!(lower_ > 0.0) || !(upper_ < 1.0)) {
      std::ostringstream os;
      os << "order profile " << describe() << " leaves (0,1) on [0," << horizon
         << "]: range [" << lower_ << ", " << upper_ << "]";
      throw ConfigError(os.str());
    }
  }

  static OrderProfile constant(double value, double horizon) {
    return {ConstantOrder{value}, horizon};
  }

  [[nodiscard]] double operator()(double t) const {
    return std::visit([t](const auto& p) { return evaluate(p, t); }, params_);
  }

  /// Lower bound nu_* over [0, T].
  [[nodiscard]] double lower() const noexcept { return lower_; }
  /// Upper bound nu^* over [0, T].
  [[nodiscard]] double upper() const noexcept { return upper_; }
  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] const OrderParams& params() const noexcept { return params_; }

  [[nodiscard]] bool is_constant() const noexcept {
    return std::holds_alternative<ConstantOrder>(params_) || lower_ == upper_;
  }

  /// Same profile expressed in the rescaled time t* = t / t0.
  [[nodiscard]] OrderProfile time_scaled(double t0) const {
    if (!(t0 > 0.0)) {
      throw ConfigError("order profile: time scale must be positive");
    }
    OrderParams scaled = std::visit(
        [t0](auto p) -> OrderParams {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, LinearRamp>) {
            p.horizon /= t0;
          } else if constexpr (std::is_same_v<P, StepChange>) {
            p.switch_time /= t0;
          } else if constexpr (std::is_same_v<P, Sinusoidal>) {
            p.period /= t0;
          } else if constexpr (std::is_same_v<P, SmoothStep>) {
            p.center /= t0;
            p.width /= t0;
          } else if constexpr (std::is_same_v<P, EpsilonLimit>) {
            p.horizon /= t0;
          }
          return p;
        },
        params_);
    return {scaled, horizon_ / t0};
  }

  [[nodiscard]] std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&os](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, ConstantOrder>) {
            os << "constant(" << p.value << ")";
          } else if constexpr (std::is_same_v<P, LinearRamp>) {
            os << "linear_ramp(" << p.start << "," << p.end << "," << p.horizon
               << ")";
          } else if constexpr (std::is_same_v<P, StepChange>) {
            os << "step(" << p.before << "," << p.after << "," << p.switch_time
               << ")";
          } else if constexpr (std::is_same_v<P, Sinusoidal>) {
            os << "sinusoidal(" << p.mean << "," << p.amplitude << ","
               << p.period << ")";
          } else if constexpr (std::is_same_v<P, SmoothStep>) {
            os << "smooth_step(" << p.start << "," << p.end << "," << p.center
               << "," << p.width << ")";
          } else {
            os << "epsilon_limit(" << p.eps << "," << p.delta << ","
               << p.horizon << ")";
          }
        },
        params_);
    return os.str();
  }

 private:
  static double evaluate(const ConstantOrder& p, double) { return p.value; }
  static double evaluate(const LinearRamp& p, double t) {
    return p.start + (p.end - p.start) * (t / p.horizon);
  }
  static double evaluate(const StepChange& p, double t) {
    return t >= p.switch_time ? p.after : p.before;
  }
  static double evaluate(const Sinusoidal& p, double t) {
    return p.mean + p.amplitude * std::sin(2.0 * std::numbers::pi * t / p.period);
  }
  static double evaluate(const SmoothStep& p, double t) {
    return p.start +
           0.5 * (p.end - p.start) * (1.0 + std::tanh((t - p.center) / p.width));
  }
  static double evaluate(const EpsilonLimit& p, double t) {
    return 1.0 - p.eps * (1.0 - t / p.horizon) - p.delta;
  }

  void check_parameters() const {
    std::visit(
        [](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          auto positive = [](double v, const char* what) {
            if (!(v > 0.0) || !std::isfinite(v)) {
              throw ConfigError(std::string("order profile: ") + what +
                                " must be positive");
            }
          };
          if constexpr (std::is_same_v<P, LinearRamp>) {
            positive(p.horizon, "ramp horizon");
          } else if constexpr (std::is_same_v<P, Sinusoidal>) {
            positive(p.period, "period");
          } else if constexpr (std::is_same_v<P, SmoothStep>) {
            positive(p.width, "smooth-step width");
          } else if constexpr (std::is_same_v<P, EpsilonLimit>) {
            positive(p.horizon, "epsilon-limit horizon");
            if (p.eps < 0.0 || p.delta < 0.0) {
              throw ConfigError("order profile: eps and delta must be >= 0");
            }
          }
        },
        params_);
  }

  // Exact extremes over [0, T]: endpoints plus interior critical points.
  [[nodiscard]] std::pair<double, double> extremes() const {
    std::vector<double> samples{0.0, horizon_};
    if (const auto* s = std::get_if<StepChange>(&params_)) {
      samples.clear();
      if (s->switch_time > 0.0) samples.push_back(0.0);
      if (s->switch_time <= horizon_) samples.push_back(horizon_);
    } else if (const auto* s = std::get_if<Sinusoidal>(&params_)) {
      // sin' = 0 at t = period (1/4 + k/2)
      for (int k = 0;; ++k) {
        const double t = s->period * (0.25 + 0.5 * k);
        if (t > horizon_) break;
        samples.push_back(t);
      }
    }
    double lo = 2.0;
    double hi = -1.0;
    for (double t : samples) {
      const double v = (*this)(t);
      if (!std::isfinite(v)) {
        throw ConfigError("order profile: non-finite value");
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {lo, hi};
  }

  OrderParams params_;
  double horizon_;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

/// Uniform time grid t_n = n tau, n = 0..N.
struct TimeGrid {
  double tau;
  int steps;

  static TimeGrid from_horizon(double horizon, int steps) {
    if (steps < 0 || !(horizon > 0.0)) {
      throw ConfigError("time grid: need T > 0 and N >= 0");
    }
    return {steps == 0 ? horizon : horizon / steps, steps};
  }

  [[nodiscard]] double t(int n) const noexcept { return n * tau; }
  [[nodiscard]] double horizon() const noexcept { return steps * tau; }
};

}  // namespace fracmhd
