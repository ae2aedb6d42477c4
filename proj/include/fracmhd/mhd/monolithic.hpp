#pragma once

#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "fracmhd/mhd/context.hpp"

namespace fracmhd::mhd {

/// The coupled (u, p, B) matrix of one Picard iteration on a fixed sparsity
/// pattern.
///
/// Unknown layout: free u components, pressure, free B components, then the
/// pressure-mean multiplier. Rows are test functions in the same order.
/// Values are rebuilt in place from a cached static part (viscous, grad-div,
/// pressure and multiplier entries) plus the mass and convection terms.
class MonolithicSystem {
 public:
  explicit MonolithicSystem(std::shared_ptr<const FemContext> ctx);

  /// Static coefficients: 1/Re, 1/Rm, zeta, chi.
  void set_parameters(double inv_Re, double inv_Rm, double zeta, double chi);

  /// A = cu M_u + cB M_B + static + L(u_w) on both fields - L(B_w) coupling.
  /// Winds are full velocity-space vectors.
  void assemble(double cu, double cB, const Eigen::VectorXd& u_wind, const Eigen::VectorXd& B_wind);

  [[nodiscard]] const Eigen::SparseMatrix<double>& matrix() const noexcept { return A_; }
  [[nodiscard]] int size() const noexcept { return size_; }
  [[nodiscard]] int num_u() const noexcept { return nu_; }
  [[nodiscard]] int num_p() const noexcept { return np_; }

  /// Reduced vector from full fields; the multiplier slot takes `lambda`.
  [[nodiscard]] Eigen::VectorXd gather(const Eigen::VectorXd& u, const Eigen::VectorXd& p,
                                       const Eigen::VectorXd& B, double lambda = 0.0) const;
  /// Full fields from a reduced vector; Dirichlet entries are set to zero.
  void scatter(const Eigen::VectorXd& x, Eigen::VectorXd& u, Eigen::VectorXd& p,
               Eigen::VectorXd& B) const;
  /// Euclidean norm of the u and B part of a reduced vector.
  [[nodiscard]] double field_norm(const Eigen::VectorXd& x) const;

 private:
  enum Slot { U0U0, U1U1, B0B0, B1B1, U0B0, U1B1, B0U0, B1U1, U0U1, U1U0, B0B1, B1B0, kSlots };

  [[nodiscard]] int position(int row, int col) const;
  [[nodiscard]] int u_index(int c, int node) const;
  [[nodiscard]] int B_index(int c, int node) const;

  std::shared_ptr<const FemContext> ctx_;
  int nn_ = 0;    // scalar P2 nodes
  int nf_ = 0;    // free scalar P2 nodes
  int nu_ = 0;    // free u unknowns (= free B unknowns)
  int np_ = 0;    // pressure nodes
  int size_ = 0;
  Eigen::SparseMatrix<double> A_;
  std::vector<int> pos_;          // [(t*36 + i*6 + j) * kSlots + slot], -1 if constrained
  std::vector<double> static_;    // static part of the value array
};

}  // namespace fracmhd::mhd
