#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "fracmhd/diagnostics.hpp"
#include "fracmhd/energy_inequalities.hpp"
#include "fracmhd/fem/linear_solver.hpp"
#include "fracmhd/l1_kernel.hpp"
#include "fracmhd/mhd/cleaning.hpp"
#include "fracmhd/mhd/config.hpp"
#include "fracmhd/mhd/context.hpp"
#include "fracmhd/mhd/monolithic.hpp"
#include "fracmhd/mhd/problems.hpp"

namespace fracmhd::mhd {

struct SimState {
  int level = 0;
  fem::Field u;
  fem::Field p;
  fem::Field B;
  std::vector<Eigen::VectorXd> u_history;  // levels 0..level
  std::vector<Eigen::VectorXd> B_history;  // cleaned fields
};

struct StepReport {
  int level = 0;
  int picard_iterations = 0;
  double increment_norm = 0.0;
  double linear_residual = 0.0;  // worst relative residual of the step
  int krylov_iterations = 0;     // summed over Picard iterations
  double div_B_pre = 0.0;
  double div_B_post = 0.0;
  double worst_violation = 0.0;  // largest relative violation over the inequality checks
};

/// One run of the fully discrete scheme.
class Simulation {
 public:
  Simulation(SolverConfig config, const InitialData& init, Forcing forcing = {});
  /// Resumes from a saved state (histories included).
  Simulation(SolverConfig config, SimState state, Forcing forcing = {});

  /// Advances one level: Picard solve, cleaning, checks, history update.
  StepReport step();

  [[nodiscard]] bool finished() const noexcept { return state_.level >= config_.steps; }
  [[nodiscard]] const SimState& state() const noexcept { return state_; }
  [[nodiscard]] const SolverConfig& config() const noexcept { return config_; }
  [[nodiscard]] const FemContext& context() const noexcept { return *ctx_; }
  [[nodiscard]] std::shared_ptr<const FemContext> context_ptr() const noexcept { return ctx_; }
  [[nodiscard]] double time() const { return grid_.t(state_.level); }

  /// Diagnostics of the current level. `report` supplies the pre-cleaning
  /// divergence and Picard count; without it the level-0 values are used.
  [[nodiscard]] diagnostics::DiagRecord record(const StepReport* report = nullptr) const;

 private:
  void setup();
  Eigen::VectorXd history_sum(const std::vector<Eigen::VectorXd>& hist, const KernelRow& row) const;
  double check_inequalities(const KernelRow& row, const Eigen::VectorXd& phi,
                            const Eigen::VectorXd& hsum, CorrectedEnergyTracker& tracker,
                            std::vector<double>& q, const char* name);

  SolverConfig config_;
  Forcing forcing_;
  TimeGrid grid_;
  std::shared_ptr<const FemContext> ctx_;
  std::unique_ptr<KernelTable> alpha_table_;
  std::unique_ptr<KernelTable> beta_table_;
  std::unique_ptr<MonolithicSystem> system_;
  std::unique_ptr<DivergenceCleaner> cleaner_;
  fem::LinearSolver solver_;
  SimState state_;
  double multiplier_ = 0.0;
  std::unique_ptr<CorrectedEnergyTracker> u_tracker_;
  std::unique_ptr<CorrectedEnergyTracker> B_tracker_;
  std::vector<double> u_sq_;
  std::vector<double> B_sq_;
};

using DiagSink = std::function<void(const diagnostics::DiagRecord&, const SimState&)>;

/// Runs levels 1..N, recording level 0 first. Step failures are rethrown
/// as SolverError carrying the failing level.
std::vector<diagnostics::DiagRecord> run_simulation(const SolverConfig& config, const InitialData& init,
                                                    const Forcing& forcing = {},
                                                    const DiagSink& sink = {});

}  // namespace fracmhd::mhd
