#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "fracmhd/fem/linear_solver.hpp"
#include "fracmhd/fem/space.hpp"
#include "fracmhd/order_profile.hpp"

namespace fracmhd::mhd {

/// Parameters of one dimensionless run.
struct SolverConfig {
  int mesh_cells = 16;  // M: cells per side of the unit square
  fem::Boundary bc = fem::Boundary::Periodic;
  double Re = 1.0;
  double Rm = 1.0;
  double zeta = 0.0;  // grad-div weight on u
  double chi = 0.0;   // grad-div weight on B
  double T = 1.0;
  int steps = 10;     // tau = T / steps
  double picard_tol = 1e-10;
  int picard_max = 30;
  bool cleaning = true;
  bool classical = false;  // backward Euler in place of the L1 operator
  std::optional<OrderProfile> alpha;
  std::optional<OrderProfile> beta;
  fem::SolveOptions linear{1e-10, fem::Backend::Krylov};
  bool check_inequalities = true;
  std::size_t history_budget_bytes = std::size_t{3} << 30;

  [[nodiscard]] TimeGrid grid() const { return TimeGrid::from_horizon(T, steps); }
  [[nodiscard]] double tau() const { return grid().tau; }

  /// Memory held by the u and B histories at the final level.
  [[nodiscard]] std::size_t history_bytes() const;

  /// Throws ConfigError on the first invalid field.
  void validate() const;

  /// Canonical one-line description; hashed into checkpoints.
  [[nodiscard]] std::string describe() const;
};

/// Dimensional material and scale parameters (SI-style units).
struct PhysicalParams {
  double rho0 = 1.0;  // density
  double mu = 1.0;    // dynamic viscosity
  double eta = 1.0;   // magnetic diffusivity
  double mu0 = 1.0;   // permeability
  double S0 = 1.0;    // length scale
  double U0 = 1.0;    // velocity scale

  [[nodiscard]] double theta() const { return S0 / U0; }
};

struct Nondimensional {
  double Re = 0.0;
  double Rm = 0.0;
  double T0 = 0.0;       // time scale theta
  double B0 = 0.0;       // field scale U0 sqrt(rho0 mu0)
  double f_scale = 0.0;  // f* = f_scale f
  double g_scale = 0.0;  // g* = g_scale g
  OrderProfile alpha;
  OrderProfile beta;
};

/// Re, Rm, forcing scales and orders in the rescaled time t* = t / T0.
Nondimensional nondimensionalize(const PhysicalParams& phys, const OrderProfile& alpha,
                                 const OrderProfile& beta);

/// 64-bit FNV-1a of a string.
std::uint64_t fnv1a(const std::string& s);

}  // namespace fracmhd::mhd
