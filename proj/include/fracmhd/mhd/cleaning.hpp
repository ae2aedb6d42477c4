#pragma once

#include <Eigen/SparseCholesky>
#include <memory>

#include "fracmhd/fem/linear_solver.hpp"
#include "fracmhd/mhd/context.hpp"

namespace fracmhd::mhd {

/// Post-step correction B = B~ - P grad phi with (grad phi, grad psi) = -(div B~, psi)
/// on the zero-mean P2 scalar space and P the L2 projection onto P2 vectors.
/// Factorizations are computed once per context.
class DivergenceCleaner {
 public:
  explicit DivergenceCleaner(std::shared_ptr<const FemContext> ctx);

  /// Cleaned field; in Dirichlet mode the boundary values are restored.
  [[nodiscard]] fem::Field clean(const fem::Field& B);

  /// Potential of the last call (full scalar field).
  [[nodiscard]] const Eigen::VectorXd& potential() const noexcept { return phi_; }

 private:
  std::shared_ptr<const FemContext> ctx_;
  fem::SparseMatrix laplace_;  // reduced, with the mean multiplier
  fem::SparseMatrix div_;      // potential rows, proj columns
  fem::SparseMatrix grad_;     // proj rows, potential columns
  fem::LinearSolver laplace_solver_;
  Eigen::SimplicialLLT<fem::SparseMatrix> mass_;
  Eigen::VectorXd phi_;
};

}  // namespace fracmhd::mhd
