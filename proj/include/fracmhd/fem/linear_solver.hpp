#pragma once

#include <Eigen/Sparse>
#include <memory>

namespace fracmhd::fem {

enum class Backend {
  Direct,  // sparse LU of every matrix
  Krylov,  // restarted GMRES preconditioned by the last LU factorization
};

struct SolveOptions {
  double tol = 1e-10;       // relative residual ||b - A x|| / ||b||
  Backend backend = Backend::Direct;
  int restart = 40;
  int max_iterations = 120;
  int refactor_above = 12;  // refresh the preconditioner after slow solves
};

struct SolveStats {
  double residual = 0.0;
  int iterations = 0;       // Krylov iterations (0 for a direct solve)
  int factorizations = 0;   // cumulative
};

/// Solves a sequence of systems sharing one sparsity pattern. Both backends
/// meet the same relative-residual contract or throw SolverError.
class LinearSolver {
 public:
  explicit LinearSolver(SolveOptions opt = {});
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  Eigen::VectorXd solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b);

  [[nodiscard]] const SolveStats& stats() const noexcept { return stats_; }
  [[nodiscard]] const SolveOptions& options() const noexcept { return opt_; }

 private:
  struct Impl;
  SolveOptions opt_;
  SolveStats stats_;
  std::unique_ptr<Impl> impl_;
};

/// One-shot direct solve with the same residual contract.
Eigen::VectorXd solve_linear(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                             double tol = 1e-10);

}  // namespace fracmhd::fem
