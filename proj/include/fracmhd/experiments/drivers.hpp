#pragma once

// Experiment drivers. Each writes its CSV artifacts and the resolved config
// into `out_dir` and returns the numbers the artifacts were made from.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fracmhd/diagnostics.hpp"
#include "fracmhd/experiments/config.hpp"

namespace fracmhd::experiments {

using diagnostics::DiagRecord;

/// One simulation of a sweep or suite.
struct RunResult {
  std::string name;
  std::vector<DiagRecord> records;
  int max_picard = 0;
  double worst_violation = -1.0;  // largest relative inequality violation seen
  std::string error;              // empty on success
};

struct ConvergenceRow {
  double tau = 0.0;
  double h = 0.0;
  double err_u = 0.0;
  double err_B = 0.0;
  std::optional<double> order_u;
  std::optional<double> order_B;
  RunResult run;
};

struct ClassicalLimitResult {
  std::vector<double> eps;
  std::vector<double> E_u;  // max over levels of ||u_eps - u_1||
  std::vector<double> E_B;
  std::vector<double> dK;   // max over levels of |K_eps - K_1|
  std::vector<double> dM;
  double check_u = 0.0;     // classical flag vs nu = 1 - delta, L-inf in time of L2
  double check_B = 0.0;
  std::vector<RunResult> runs;  // classical, 1 - delta, then one per eps
};

struct VortexResult {
  std::vector<RunResult> runs;                    // classical first
  std::vector<std::array<double, 4>> deltas;      // per run vs classical (zero for classical)
};

struct SweepRow {
  double zeta = 0.0;
  double chi = 0.0;
  double max_div_u = 0.0;
  double max_div_B = 0.0;
  std::optional<std::array<double, 4>> d;  // empty for the reference point
  RunResult run;
};

struct ReynoldsRow {
  double Re = 0.0;
  std::array<double, 4> I{};
  RunResult run;
};

struct PhaseRow {
  double alpha0 = 0.0;
  double alphaT = 0.0;
  diagnostics::PhaseDeviation dev;
  RunResult run;
};

struct PhaseResult {
  RunResult reference;
  std::vector<PhaseRow> rows;
};

struct KernelRowReport {
  std::string profile;
  bool prop_b1 = false;
  bool prop_b3 = false;
  bool prop_b2 = false;
  double gamma = 0.0;
  double pi_A = 0.0;
  bool A1 = false;
  bool A2 = false;
  bool A3 = false;
  double comp_resid = 0.0;
  double comp_min_entry = 0.0;
  double remark_slack = 0.0;
};

/// Order profiles of every experiment on [0, T], with display names.
std::vector<std::pair<std::string, OrderProfile>> profile_catalog(double T);

/// Vortex case names in catalog order (classical excluded).
std::vector<std::string> vortex_case_names();
/// alpha and beta specs of a vortex case on [0, T].
std::pair<std::string, std::string> vortex_case(const std::string& name, double T);

std::vector<KernelRowReport> run_kernel_check(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& cfg, const std::string& out_dir);
ClassicalLimitResult run_classical_limit(const ExperimentConfig& cfg, const std::string& out_dir);
VortexResult run_vortex(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<SweepRow> run_stabilization_sweep(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<ReynoldsRow> run_reynolds_sweep(const ExperimentConfig& cfg, const std::string& out_dir);
PhaseResult run_phase_map(const ExperimentConfig& cfg, const std::string& out_dir);

/// Dispatches on cfg.kind.
void run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);

/// Timeseries CSV of one run.
void write_timeseries(const std::string& path, const std::vector<DiagRecord>& records);

}  // namespace fracmhd::experiments
