#pragma once

#include <Eigen/Sparse>

#include "fracmhd/fem/reference.hpp"
#include "fracmhd/fem/space.hpp"

namespace fracmhd::fem {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class OperatorKind {
  Mass,         // (u, v)
  Stiffness,    // (grad u, grad v)
  GradDiv,      // (div u, div v)
  PressureDiv,  // (p, div v): trial P1 scalar, test P2 vector
  Divergence,   // (div u, psi): trial vector, test scalar of the same degree
  Gradient,     // (grad phi, v): trial scalar, test vector of the same degree
};

/// Matrix with rows indexed by test-field entries and columns by trial-field
/// entries (full field indexing, Dirichlet entries included).
SparseMatrix assemble_operator(OperatorKind kind, const FeSpace& trial, const FeSpace& test);

/// Skew-symmetric convection L(a)_{ij} = 1/2 int (a.grad phi_j) phi_i - (a.grad phi_i) phi_j,
/// applied componentwise on `space`. The wind is a P2 vector field.
SparseMatrix assemble_convection(const Field& wind, const FeSpace& space);

/// Load vector (f, v) by the degree-6 rule.
Eigen::VectorXd assemble_load(const FeSpace& space, const VectorFunction& f);
Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarFunction& f);

/// int phi_i for a scalar space (field indexing).
Eigen::VectorXd integral_weights(const FeSpace& space);

}  // namespace fracmhd::fem
