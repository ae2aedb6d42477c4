#include "fracmhd/fem/space.hpp"

#include "fracmhd/errors.hpp"

namespace fracmhd::fem {

const char* to_string(Boundary bc) {
  switch (bc) {
    case Boundary::Dirichlet: return "dirichlet";
    case Boundary::Periodic: return "periodic";
    case Boundary::Free: return "free";
  }
  return "?";
}

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, int degree, int components, Boundary bc,
                 bool zero_mean)
    : mesh_(std::move(mesh)), degree_(degree), components_(components), bc_(bc), zero_mean_(zero_mean) {
  if (degree != 1 && degree != 2) throw UsageError("FeSpace: degree must be 1 or 2");
  if (components != 1 && components != 2) throw UsageError("FeSpace: 1 or 2 components");
  const int M = mesh_->cells_per_side();
  lattice_ = degree * M;
  const int L = lattice_;
  num_nodes_ = bc == Boundary::Periodic ? L * L : (L + 1) * (L + 1);

  points_.resize(static_cast<std::size_t>(num_nodes_));
  free_index_.assign(static_cast<std::size_t>(num_nodes_), 0);
  const int Jmax = bc == Boundary::Periodic ? L - 1 : L;
  for (int J = 0; J <= Jmax; ++J) {
    for (int I = 0; I <= Jmax; ++I) {
      const int node = node_of_lattice(I, J);
      points_[static_cast<std::size_t>(node)] = {static_cast<double>(I) / L, static_cast<double>(J) / L};
      const bool boundary = I == 0 || J == 0 || I == L || J == L;
      free_index_[static_cast<std::size_t>(node)] = (bc == Boundary::Dirichlet && boundary) ? -1 : 0;
    }
  }
  num_free_nodes_ = 0;
  for (auto& f : free_index_) {
    if (f >= 0) f = num_free_nodes_++;
  }

  // Local lattice offsets (in units of 1/(degree M)) for each triangle type.
  static constexpr int p2[2][6][2] = {
      {{0, 0}, {2, 0}, {2, 2}, {1, 0}, {2, 1}, {1, 1}},
      {{0, 0}, {2, 2}, {0, 2}, {1, 1}, {1, 2}, {0, 1}},
  };
  static constexpr int p1[2][3][2] = {{{0, 0}, {1, 0}, {1, 1}}, {{0, 0}, {1, 1}, {0, 1}}};
  const int nloc = local_nodes();
  elem_.resize(static_cast<std::size_t>(mesh_->num_triangles()) * nloc);
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const auto [i, j] = mesh_->cell(t);
    const int ty = Mesh::type(t);
    for (int k = 0; k < nloc; ++k) {
      const int* off = degree == 2 ? p2[ty][k] : p1[ty][k];
      elem_[static_cast<std::size_t>(t) * nloc + k] =
          node_of_lattice(degree * i + off[0], degree * j + off[1]);
    }
  }
}

int FeSpace::node_of_lattice(int I, int J) const {
  const int L = lattice_;
  if (bc_ == Boundary::Periodic) return (J % L) * L + (I % L);
  return J * (L + 1) + I;
}

std::vector<int> FeSpace::dof_to_unknown() const {
  std::vector<int> map(static_cast<std::size_t>(size()));
  for (int c = 0; c < components_; ++c) {
    for (int n = 0; n < num_nodes_; ++n) {
      const int f = free_index(n);
      map[static_cast<std::size_t>(c * num_nodes_ + n)] = f < 0 ? -1 : c * num_free_nodes_ + f;
    }
  }
  return map;
}

Field interpolate(std::shared_ptr<const FeSpace> space, const ScalarFunction& f) {
  if (space->components() != 1) throw UsageError("interpolate: scalar function on vector space");
  Field out(space);
  for (int n = 0; n < space->num_nodes(); ++n) {
    const Point p = space->node_point(n);
    out.values[n] = f(p.x, p.y);
  }
  return out;
}

Field interpolate(std::shared_ptr<const FeSpace> space, const VectorFunction& f) {
  if (space->components() != 2) throw UsageError("interpolate: vector function on scalar space");
  Field out(space);
  const int n_nodes = space->num_nodes();
  for (int n = 0; n < n_nodes; ++n) {
    const Point p = space->node_point(n);
    const auto v = f(p.x, p.y);
    out.values[n] = v[0];
    out.values[n_nodes + n] = v[1];
  }
  return out;
}

}  // namespace fracmhd::fem
