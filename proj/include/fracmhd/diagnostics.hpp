#pragma once

// Scalar diagnostics of a run and the comparison metrics built on them.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "fracmhd/fem/space.hpp"

namespace fracmhd::diagnostics {

struct DiagRecord {
  double t = 0.0;
  double K = 0.0;  // 1/2 ||u||^2
  double M = 0.0;  // 1/2 ||B||^2
  double Z = 0.0;  // 1/2 ||curl u||^2
  double J = 0.0;  // 1/2 ||curl B||^2
  double Etot = 0.0;
  double div_u = 0.0;
  double div_B_pre = 0.0;
  double div_B_post = 0.0;
  int picard_iters = 0;
};

/// Energies and divergence norms of (u, B) at time t. Both divergence
/// columns get ||div B||; the solver overwrites the pre-cleaning value.
DiagRecord energy_report(const fem::Field& u, const fem::Field& B, double t);

/// ||v_h - I_h v||: L2 distance to the nodal interpolant on the same space.
double interpolant_error(const fem::Field& vh, const fem::VectorFunction& exact);

/// ||a - b|| for two fields on the same space.
double l2_distance(const fem::Field& a, const fem::Field& b);

/// Per-level errors and running maxima; the summary is the max over all levels.
struct ErrorSeries {
  std::vector<double> err_u;
  std::vector<double> err_B;
  std::vector<double> max_u;
  std::vector<double> max_B;

  void push(double eu, double eB);
  [[nodiscard]] double summary_u() const { return max_u.empty() ? 0.0 : max_u.back(); }
  [[nodiscard]] double summary_B() const { return max_B.empty() ? 0.0 : max_B.back(); }
};

using SpaceTimeFunction = std::function<std::array<double, 2>(double, double, double)>;

/// Errors of a stored trajectory against an exact solution at the given times.
ErrorSeries error_vs_exact(std::span<const fem::Field> u, std::span<const fem::Field> B,
                           std::span<const double> times, const SpaceTimeFunction& exact_u,
                           const SpaceTimeFunction& exact_B);

/// log2(E_coarse / E_fine).
double observed_order(double coarse, double fine);

/// Composite trapezoid on a uniform grid with spacing tau.
double trapezoid(std::span<const double> values, double tau);

/// int |q - ref| / int |ref| by the trapezoid rule.
double rel_dev_L1(std::span<const double> q, std::span<const double> ref, double tau);

enum Measure { kK = 0, kM = 1, kZ = 2, kJ = 3 };

/// One diagnostic column of a trajectory.
std::vector<double> column(std::span<const DiagRecord> records, Measure m);

struct PhaseDeviation {
  std::array<double, 4> I{};    // I_K, I_M, I_Z, I_J
  std::array<double, 4> dI{};   // (I - I_ref) / I_ref
};

PhaseDeviation phase_deviation(std::span<const DiagRecord> run, std::span<const DiagRecord> ref,
                               double tau);

/// Distance of one level of an epsilon run to the classical run.
struct GapPoint {
  double E_u = 0.0;
  double E_B = 0.0;
  double dK = 0.0;
  double dM = 0.0;
};

GapPoint classical_gap(const fem::Field& u_eps, const fem::Field& B_eps, const fem::Field& u_1,
                       const fem::Field& B_1);

}  // namespace fracmhd::diagnostics
