#pragma once

// Element tables for the two congruent triangle types of the structured mesh.
// Every triangle of one type is a translate of the same reference triangle,
// so local matrices are computed once per type and mesh size.

#include <Eigen/Dense>
#include <array>

#include "fracmhd/fem/mesh.hpp"
#include "fracmhd/fem/quadrature.hpp"

namespace fracmhd::fem {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat3 = Eigen::Matrix<double, 3, 3>;
using Mat63 = Eigen::Matrix<double, 6, 3>;

inline constexpr int kQuadPoints = static_cast<int>(kDegree6Rule.size());

/// Basis values and exact local integrals on one triangle type. P2 nodes are
/// the vertices then the edge midpoints (0,1), (1,2), (2,0).
struct ElementTables {
  double area = 0.0;
  std::array<Point, 3> vertices{};          // relative to the cell corner
  std::array<std::array<double, 2>, 3> grad_lambda{};

  // At quadrature points: weight times area, values, gradients.
  std::array<double, kQuadPoints> qw{};
  std::array<Point, kQuadPoints> qpoint{};  // relative to the cell corner
  std::array<std::array<double, 6>, kQuadPoints> phi2{};
  std::array<std::array<std::array<double, 2>, 6>, kQuadPoints> dphi2{};
  std::array<std::array<double, 3>, kQuadPoints> phi1{};
  std::array<std::array<double, 2>, 3> dphi1{};

  Mat6 mass2;                     // int phi_i phi_j
  Mat6 stiff2;                    // int grad phi_i . grad phi_j
  std::array<std::array<Mat6, 2>, 2> dd2;  // dd2[a][b](i,j) = int d_a phi_i d_b phi_j
  std::array<Mat6, 2> adv2;       // adv2[a](i,j) = int phi_i d_a phi_j
  std::array<Mat63, 2> pdiv;      // pdiv[a](i,k) = int psi_k d_a phi_i
  Mat3 mass1;
  Mat3 stiff1;
  std::array<double, 6> int_phi2{};
  std::array<double, 3> int_phi1{};
  // skew[c][m](i,j) = 1/2 int phi_m (phi_i d_c phi_j - phi_j d_c phi_i)
  std::array<std::array<Mat6, 6>, 2> skew;
};

/// Tables for both triangle types at mesh size 1/M.
struct ReferenceElements {
  explicit ReferenceElements(const Mesh& mesh);
  std::array<ElementTables, 2> type;
};

/// P2 basis values at barycentric coordinates (l0, l1, l2).
std::array<double, 6> p2_values(double l0, double l1, double l2);

}  // namespace fracmhd::fem
