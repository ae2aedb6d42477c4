#pragma once

// Experiment configuration files.
//
// INI sections and keys (all optional; missing keys take the defaults of the
// experiment kind):
//   [run]              workers
//   [mesh]             cells, bc = periodic | dirichlet
//   [time]             T, steps
//   [physics]          Re, Rm, zeta, chi
//   [solver]           picard_tol, picard_max, linear_tol, backend = direct | krylov,
//                      cleaning, check_inequalities
//   [orders]           alpha, beta (profile specs, see parse_profile)
//   [initial]          data = vortex | limit | zero
//   [convergence]      mode = temporal | spatial, ladder (steps or cells per rung)
//   [classical_limit]  eps (list), delta
//   [vortex]           cases (list of catalog names, or "all")
//   [sweep]            points ("zeta:chi" list), reference ("zeta:chi")
//   [reynolds]         values (list; Rm follows Re)
//   [phase]            grid, lo, hi
//   [kernel]           levels, horizons (list)
// Lists are whitespace separated. Unknown sections or keys are errors.

#include <string>
#include <utility>
#include <vector>

#include "fracmhd/mhd/config.hpp"
#include "fracmhd/mhd/problems.hpp"

namespace fracmhd::experiments {

enum class Kind {
  KernelCheck,
  Convergence,
  ClassicalLimit,
  Vortex,
  StabilizationSweep,
  ReynoldsSweep,
  PhaseMap,
};

/// Subcommand name of a kind, e.g. "phase-map".
const char* to_string(Kind k);
/// Throws ConfigError for unknown names.
Kind kind_from_string(const std::string& name);

enum class InitialKind { Zero, Vortex, Limit };

struct ExperimentConfig {
  Kind kind = Kind::Vortex;
  int workers = 1;

  // Base run; alpha/beta are resolved from the specs below.
  mhd::SolverConfig solver;
  std::string alpha_spec = "ramp 0.9 0.6";
  std::string beta_spec = "ramp 0.9 0.6";
  InitialKind initial = InitialKind::Vortex;

  std::string convergence_mode = "temporal";
  std::vector<int> ladder;

  std::vector<double> eps;
  double delta = 1e-10;

  std::vector<std::string> cases;

  std::vector<std::pair<double, double>> sweep_points;
  std::pair<double, double> sweep_reference{2000.0, 500.0};

  std::vector<double> reynolds;

  int phase_grid = 5;
  double phase_lo = 0.5;
  double phase_hi = 0.9;

  int kernel_levels = 512;
  std::vector<double> kernel_horizons{0.16, 0.5, 1.0};

  /// Throws ConfigError on the first invalid field.
  void validate() const;
  /// Fully resolved configuration in the file format; loading it back
  /// reproduces this object.
  [[nodiscard]] std::string to_ini() const;
};

/// Desk-scale defaults of an experiment kind.
ExperimentConfig default_config(Kind kind);

/// Defaults of `kind` overridden by the file; validated.
ExperimentConfig load_config(const std::string& path, Kind kind);
ExperimentConfig parse_config(const std::string& text, Kind kind);

/// Order profile on [0, T] from a spec:
///   const v | ramp v0 v1 | step before after t_switch | sin mean amp period |
///   smooth start end center width | eps eps delta
/// Ramps and the epsilon family span the horizon T.
OrderProfile parse_profile(const std::string& spec, double T);

/// Solver config of the base run with orders resolved ("classical" in either
/// spec selects the classical scheme).
mhd::SolverConfig resolve_solver(const ExperimentConfig& cfg);

mhd::InitialData initial_data(InitialKind k);

}  // namespace fracmhd::experiments
