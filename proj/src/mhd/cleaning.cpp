#include "fracmhd/mhd/cleaning.hpp"

#include "fracmhd/errors.hpp"
#include "fracmhd/fem/constraints.hpp"

namespace fracmhd::mhd {

using fem::OperatorKind;

DivergenceCleaner::DivergenceCleaner(std::shared_ptr<const FemContext> ctx)
    : ctx_(std::move(ctx)), laplace_solver_(fem::SolveOptions{1e-12, fem::Backend::Krylov}) {
  const auto& S = *ctx_->potential;
  const auto& P = *ctx_->proj;
  const fem::SparseMatrix K = fem::assemble_operator(OperatorKind::Stiffness, S, S);
  const auto cons = fem::Constraints::for_space(S);
  laplace_ = fem::constrain_system(K, Eigen::VectorXd::Zero(S.size()), cons).A;
  div_ = fem::assemble_operator(OperatorKind::Divergence, P, S);
  grad_ = fem::assemble_operator(OperatorKind::Gradient, S, P);
  mass_.compute(fem::assemble_operator(OperatorKind::Mass, S, S));
  if (mass_.info() != Eigen::Success) throw SolverError("cleaning: mass factorization failed");
  phi_ = Eigen::VectorXd::Zero(S.size());
}

fem::Field DivergenceCleaner::clean(const fem::Field& B) {
  const auto& vel = *ctx_->vel;
  const int n = ctx_->potential->size();
  if (B.values.size() != ctx_->proj->size()) throw UsageError("cleaning: field size mismatch");

  // No Dirichlet nodes on the potential space: unknowns are the nodes plus the multiplier.
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs.head(n) = -(div_ * B.values);
  const Eigen::VectorXd x = laplace_solver_.solve(laplace_, rhs);
  phi_ = x.head(n);

  const Eigen::VectorXd g = grad_ * phi_;
  fem::Field out(B.space, B.values);
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd gc = mass_.solve(g.segment(static_cast<Eigen::Index>(c) * n, n));
    out.values.segment(static_cast<Eigen::Index>(c) * n, n) -= gc;
  }
  if (ctx_->bc == fem::Boundary::Dirichlet) {
    for (int node = 0; node < vel.num_nodes(); ++node) {
      if (!vel.is_fixed(node)) continue;
      for (int c = 0; c < 2; ++c) out.values[c * vel.num_nodes() + node] = B.values[c * vel.num_nodes() + node];
    }
  }
  return out;
}

}  // namespace fracmhd::mhd
