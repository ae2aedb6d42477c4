#pragma once

#include <cmath>
#include <sstream>

#include "fracmhd/errors.hpp"
#include "fracmhd/gamma.hpp"
#include "fracmhd/summation.hpp"

namespace fracmhd {

struct MittagLefflerOptions {
  double max_argument = 100.0;
  int max_terms = 100000;
};

/// One-parameter Mittag-Leffler function E_g(x) = sum_k x^k / Gamma(g k + 1)
/// for g in (0, 1] and 0 <= x <= max_argument.
inline double mittag_leffler(double g, double x, const MittagLefflerOptions& opt = {}) {
  if (!(g > 0.0 && g <= 1.0)) {
    throw UsageError("mittag_leffler: order must lie in (0, 1]");
  }
  if (!(x >= 0.0) || x > opt.max_argument) {
    std::ostringstream os;
    os << "mittag_leffler: argument " << x << " outside [0, " << opt.max_argument << "]";
    throw NumericError(os.str());
  }
  if (x == 0.0) return 1.0;

  const double log_x = std::log(x);
  CompensatedSum sum;
  double previous = 0.0;
  for (int k = 0; k < opt.max_terms; ++k) {
    const double arg = g * k + 1.0;
    double term = 0.0;
    if (arg < 170.0) {
      term = std::pow(x, k) / gamma_fn(arg);
    } else {
      term = std::exp(k * log_x - std::lgamma(arg));
    }
    if (!std::isfinite(term)) {
      std::ostringstream os;
      os << "mittag_leffler: overflow at E_" << g << "(" << x << ")";
      throw NumericError(os.str());
    }
    sum.add(term);
    // Terms grow until g k ~ x^{1/g}; stop only on the decreasing tail.
    if (k > 0 && term < previous && term < 1e-16 * sum.value()) {
      const double value = sum.value();
      if (!std::isfinite(value)) break;
      return value;
    }
    previous = term;
  }
  std::ostringstream os;
  os << "mittag_leffler: series did not converge for E_" << g << "(" << x << ")";
  throw NumericError(os.str());
}

}  // namespace fracmhd
