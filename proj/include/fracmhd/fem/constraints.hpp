#pragma once

#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "fracmhd/fem/space.hpp"

namespace fracmhd::fem {

/// Elimination of Dirichlet entries and an optional mean-value multiplier.
/// Periodic identification is already part of the node numbering.
struct Constraints {
  std::vector<int> unknown_of;   // full index -> unknown index, -1 if prescribed
  int num_free = 0;
  Eigen::VectorXd fixed_values;  // used where unknown_of == -1
  std::optional<Eigen::VectorXd> mean_weights;  // adds sum_i w_i x_i = 0

  [[nodiscard]] int full_size() const noexcept { return static_cast<int>(unknown_of.size()); }
  [[nodiscard]] int reduced_size() const noexcept { return num_free + (mean_weights ? 1 : 0); }

  static Constraints identity(int n);
  /// Homogeneous Dirichlet values on fixed nodes; mean multiplier if the space asks for it.
  static Constraints for_space(const FeSpace& space);
};

struct ReducedSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
};

/// Restricts A x = b to the unknowns, moving prescribed values to the right
/// side, and appends the multiplier row and column.
ReducedSystem constrain_system(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                               const Constraints& c);

/// Full vector from reduced unknowns; the multiplier value is dropped.
Eigen::VectorXd expand_solution(const Eigen::VectorXd& x, const Constraints& c);

}  // namespace fracmhd::fem
