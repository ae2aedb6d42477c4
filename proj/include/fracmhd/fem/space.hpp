#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fracmhd/fem/mesh.hpp"

namespace fracmhd::fem {

enum class Boundary { Dirichlet, Periodic, Free };

const char* to_string(Boundary bc);

/// Continuous Lagrange space of degree 1 or 2 with 1 or 2 components.
///
/// Nodes are numbered after periodic identification. Values of a field are
/// stored component-major: index c * num_nodes() + node. Dirichlet nodes stay
/// in the field (holding the prescribed value) but are not unknowns.
class FeSpace {
 public:
  FeSpace(std::shared_ptr<const Mesh> mesh, int degree, int components, Boundary bc,
          bool zero_mean = false);

  [[nodiscard]] const Mesh& mesh() const noexcept { return *mesh_; }
  [[nodiscard]] const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] int components() const noexcept { return components_; }
  [[nodiscard]] Boundary boundary() const noexcept { return bc_; }
  [[nodiscard]] bool zero_mean() const noexcept { return zero_mean_; }
  [[nodiscard]] int local_nodes() const noexcept { return degree_ == 2 ? 6 : 3; }

  /// Scalar nodes after identification.
  [[nodiscard]] int num_nodes() const noexcept { return num_nodes_; }
  /// Length of a field vector.
  [[nodiscard]] int size() const noexcept { return components_ * num_nodes_; }
  /// Scalar nodes that are unknowns (not Dirichlet).
  [[nodiscard]] int num_free_nodes() const noexcept { return num_free_nodes_; }
  /// Unknowns of the vector space, excluding any mean multiplier.
  [[nodiscard]] int num_free() const noexcept { return components_ * num_free_nodes_; }
  /// Unknowns including the zero-mean multiplier.
  [[nodiscard]] int num_unknowns() const noexcept { return num_free() + (zero_mean_ ? 1 : 0); }

  [[nodiscard]] bool is_fixed(int node) const { return free_index_[static_cast<std::size_t>(node)] < 0; }
  /// Free index of a scalar node, -1 if Dirichlet.
  [[nodiscard]] int free_index(int node) const { return free_index_[static_cast<std::size_t>(node)]; }
  /// Map from field index to unknown index (-1 for Dirichlet entries).
  [[nodiscard]] std::vector<int> dof_to_unknown() const;

  /// Node indices of triangle t in local order.
  [[nodiscard]] std::span<const int> element_nodes(int t) const {
    return {elem_.data() + static_cast<std::size_t>(t) * local_nodes(),
            static_cast<std::size_t>(local_nodes())};
  }
  [[nodiscard]] Point node_point(int node) const { return points_[static_cast<std::size_t>(node)]; }

  /// Lattice index (I, J) in steps of 1/(degree M) for a raw node before identification.
  [[nodiscard]] int node_of_lattice(int I, int J) const;

  [[nodiscard]] bool same_layout(const FeSpace& other) const noexcept {
    return mesh_ == other.mesh_ && degree_ == other.degree_ && bc_ == other.bc_;
  }

 private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  int components_;
  Boundary bc_;
  bool zero_mean_;
  int lattice_ = 0;  // degree * M
  int num_nodes_ = 0;
  int num_free_nodes_ = 0;
  std::vector<int> elem_;
  std::vector<int> free_index_;
  std::vector<Point> points_;
};

/// A DoF vector tied to its space.
struct Field {
  std::shared_ptr<const FeSpace> space;
  Eigen::VectorXd values;

  Field() = default;
  explicit Field(std::shared_ptr<const FeSpace> s)
      : space(std::move(s)), values(Eigen::VectorXd::Zero(space->size())) {}
  Field(std::shared_ptr<const FeSpace> s, Eigen::VectorXd v) : space(std::move(s)), values(std::move(v)) {}

  [[nodiscard]] auto component(int c) const {
    return values.segment(static_cast<Eigen::Index>(c) * space->num_nodes(), space->num_nodes());
  }
  [[nodiscard]] auto component(int c) {
    return values.segment(static_cast<Eigen::Index>(c) * space->num_nodes(), space->num_nodes());
  }
};

using ScalarFunction = std::function<double(double, double)>;
using VectorFunction = std::function<std::array<double, 2>(double, double)>;

/// Nodal interpolation; Dirichlet nodes take the function value as well.
Field interpolate(std::shared_ptr<const FeSpace> space, const ScalarFunction& f);
Field interpolate(std::shared_ptr<const FeSpace> space, const VectorFunction& f);

}  // namespace fracmhd::fem
