#pragma once

#include <stdexcept>
#include <string>

namespace fracmhd {

/// Invalid parameters or configuration detected before any computation runs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (shape mismatch, out-of-range level, ...).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Floating-point failure: overflow, zero pivot, non-finite result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear or nonlinear solve failed to reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double achieved = 0.0, int level = -1)
      : std::runtime_error(what), achieved_(achieved), level_(level) {}

  [[nodiscard]] double achieved() const noexcept { return achieved_; }
  [[nodiscard]] int level() const noexcept { return level_; }

 private:
  double achieved_;
  int level_;
};

}  // namespace fracmhd
