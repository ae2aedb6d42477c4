#include "fracmhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "fracmhd/errors.hpp"
#include "fracmhd/fem/integrate.hpp"
#include "fracmhd/summation.hpp"

namespace fracmhd::diagnostics {

using fem::Field;
using fem::Quantity;

DiagRecord energy_report(const Field& u, const Field& B, double t) {
  DiagRecord r;
  r.t = t;
  r.K = 0.5 * fem::integrate_quantity(Quantity::SqNorm, u);
  r.M = 0.5 * fem::integrate_quantity(Quantity::SqNorm, B);
  r.Z = 0.5 * fem::integrate_quantity(Quantity::SqCurl, u);
  r.J = 0.5 * fem::integrate_quantity(Quantity::SqCurl, B);
  r.Etot = r.K + r.M;
  r.div_u = std::sqrt(fem::integrate_quantity(Quantity::SqDiv, u));
  r.div_B_pre = std::sqrt(fem::integrate_quantity(Quantity::SqDiv, B));
  r.div_B_post = r.div_B_pre;
  return r;
}

double l2_distance(const Field& a, const Field& b) {
  if (a.space != b.space && !(a.space->same_layout(*b.space) && a.space->components() == b.space->components())) {
    throw UsageError("l2_distance: fields on different spaces");
  }
  const Field d(a.space, a.values - b.values);
  return std::sqrt(fem::integrate_quantity(Quantity::SqNorm, d));
}

double interpolant_error(const Field& vh, const fem::VectorFunction& exact) {
  return l2_distance(vh, fem::interpolate(vh.space, exact));
}

void ErrorSeries::push(double eu, double eB) {
  err_u.push_back(eu);
  err_B.push_back(eB);
  max_u.push_back(std::max(max_u.empty() ? 0.0 : max_u.back(), eu));
  max_B.push_back(std::max(max_B.empty() ? 0.0 : max_B.back(), eB));
}

ErrorSeries error_vs_exact(std::span<const Field> u, std::span<const Field> B,
                           std::span<const double> times, const SpaceTimeFunction& exact_u,
                           const SpaceTimeFunction& exact_B) {
  if (u.size() != B.size() || u.size() != times.size()) throw UsageError("error_vs_exact: length mismatch");
  ErrorSeries s;
  for (std::size_t n = 0; n < u.size(); ++n) {
    const double t = times[n];
    s.push(interpolant_error(u[n], [&](double x, double y) { return exact_u(x, y, t); }),
           interpolant_error(B[n], [&](double x, double y) { return exact_B(x, y, t); }));
  }
  return s;
}

double observed_order(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) throw UsageError("observed_order: errors must be positive");
  return std::log2(coarse / fine);
}

double trapezoid(std::span<const double> values, double tau) {
  if (values.size() < 2) return 0.0;
  CompensatedSum s;
  s.add(0.5 * values.front());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s.add(values[i]);
  s.add(0.5 * values.back());
  return tau * s.value();
}

double rel_dev_L1(std::span<const double> q, std::span<const double> ref, double tau) {
  if (q.size() != ref.size()) throw UsageError("rel_dev_L1: series lengths differ");
  std::vector<double> diff(q.size());
  std::vector<double> absref(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    diff[i] = std::abs(q[i] - ref[i]);
    absref[i] = std::abs(ref[i]);
  }
  const double den = trapezoid(absref, tau);
  if (!(den > 0.0)) throw NumericError("rel_dev_L1: reference integral is zero");
  return trapezoid(diff, tau) / den;
}

std::vector<double> column(std::span<const DiagRecord> records, Measure m) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    switch (m) {
      case kK: out.push_back(r.K); break;
      case kM: out.push_back(r.M); break;
      case kZ: out.push_back(r.Z); break;
      case kJ: out.push_back(r.J); break;
    }
  }
  return out;
}

PhaseDeviation phase_deviation(std::span<const DiagRecord> run, std::span<const DiagRecord> ref,
                               double tau) {
  if (run.size() != ref.size()) throw UsageError("phase_deviation: trajectories differ in length");
  PhaseDeviation d;
  for (int m = 0; m < 4; ++m) {
    const auto q = column(run, static_cast<Measure>(m));
    const auto r = column(ref, static_cast<Measure>(m));
    const double Iq = trapezoid(q, tau);
    const double Ir = trapezoid(r, tau);
    if (Ir == 0.0) throw NumericError("phase_deviation: zero reference integral");
    d.I[static_cast<std::size_t>(m)] = Iq;
    d.dI[static_cast<std::size_t>(m)] = (Iq - Ir) / Ir;
  }
  return d;
}

GapPoint classical_gap(const Field& u_eps, const Field& B_eps, const Field& u_1, const Field& B_1) {
  GapPoint g;
  g.E_u = l2_distance(u_eps, u_1);
  g.E_B = l2_distance(B_eps, B_1);
  g.dK = 0.5 * std::abs(fem::integrate_quantity(Quantity::SqNorm, u_eps) -
                        fem::integrate_quantity(Quantity::SqNorm, u_1));
  g.dM = 0.5 * std::abs(fem::integrate_quantity(Quantity::SqNorm, B_eps) -
                        fem::integrate_quantity(Quantity::SqNorm, B_1));
  return g;
}

}  // namespace fracmhd::diagnostics
