#include "fracmhd/fem/assembly.hpp"

#include <vector>

#include "fracmhd/errors.hpp"

namespace fracmhd::fem {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void check_mesh(const FeSpace& a, const FeSpace& b) {
  if (a.mesh_ptr() != b.mesh_ptr()) throw UsageError("assembly: spaces on different meshes");
}

// Adds block(a, b) of every element: rows test component a, columns trial component b.
template <class Local>
void scatter(Triplets& trip, const FeSpace& trial, const FeSpace& test, int a, int b, Local&& local) {
  const int nt = test.local_nodes();
  const int nr = trial.local_nodes();
  const int ro = a * test.num_nodes();
  const int co = b * trial.num_nodes();
  const Mesh& mesh = test.mesh();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto rows = test.element_nodes(t);
    const auto cols = trial.element_nodes(t);
    const auto& m = local(Mesh::type(t));
    for (int i = 0; i < nt; ++i) {
      for (int j = 0; j < nr; ++j) {
        const double v = m(i, j);
        if (v != 0.0) trip.emplace_back(ro + rows[static_cast<std::size_t>(i)], co + cols[static_cast<std::size_t>(j)], v);
      }
    }
  }
}

SparseMatrix finish(const Triplets& trip, int rows, int cols) {
  SparseMatrix A(rows, cols);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

}  // namespace

SparseMatrix assemble_operator(OperatorKind kind, const FeSpace& trial, const FeSpace& test) {
  check_mesh(trial, test);
  const ReferenceElements ref(test.mesh());
  Triplets trip;
  switch (kind) {
    case OperatorKind::Mass:
    case OperatorKind::Stiffness: {
      if (trial.degree() != test.degree() || trial.components() != test.components()) {
        throw UsageError("assemble_operator: mass/stiffness need matching spaces");
      }
      const bool mass = kind == OperatorKind::Mass;
      for (int c = 0; c < test.components(); ++c) {
        if (test.degree() == 2) {
          scatter(trip, trial, test, c, c, [&](int ty) -> const Mat6& {
            return mass ? ref.type[ty].mass2 : ref.type[ty].stiff2;
          });
        } else {
          scatter(trip, trial, test, c, c, [&](int ty) -> const Mat3& {
            return mass ? ref.type[ty].mass1 : ref.type[ty].stiff1;
          });
        }
      }
      break;
    }
    case OperatorKind::GradDiv:
      if (trial.degree() != 2 || test.degree() != 2 || trial.components() != 2 || test.components() != 2) {
        throw UsageError("assemble_operator: grad-div needs P2 vector spaces");
      }
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          scatter(trip, trial, test, a, b, [&](int ty) -> const Mat6& { return ref.type[ty].dd2[a][b]; });
        }
      }
      break;
    case OperatorKind::PressureDiv:
      if (trial.degree() != 1 || trial.components() != 1 || test.degree() != 2 || test.components() != 2) {
        throw UsageError("assemble_operator: pressure-div needs P1 scalar trial and P2 vector test");
      }
      for (int a = 0; a < 2; ++a) {
        scatter(trip, trial, test, a, 0, [&](int ty) -> const Mat63& { return ref.type[ty].pdiv[a]; });
      }
      break;
    case OperatorKind::Divergence:
      if (trial.degree() != 2 || test.degree() != 2 || trial.components() != 2 || test.components() != 1) {
        throw UsageError("assemble_operator: divergence needs P2 vector trial and P2 scalar test");
      }
      for (int a = 0; a < 2; ++a) {
        scatter(trip, trial, test, 0, a, [&](int ty) -> const Mat6& { return ref.type[ty].adv2[a]; });
      }
      break;
    case OperatorKind::Gradient:
      if (trial.degree() != 2 || test.degree() != 2 || trial.components() != 1 || test.components() != 2) {
        throw UsageError("assemble_operator: gradient needs P2 scalar trial and P2 vector test");
      }
      for (int a = 0; a < 2; ++a) {
        scatter(trip, trial, test, a, 0, [&](int ty) -> const Mat6& { return ref.type[ty].adv2[a]; });
      }
      break;
  }
  return finish(trip, test.size(), trial.size());
}

SparseMatrix assemble_convection(const Field& wind, const FeSpace& space) {
  const FeSpace& ws = *wind.space;
  check_mesh(ws, space);
  if (ws.degree() != 2 || ws.components() != 2 || space.degree() != 2) {
    throw UsageError("assemble_convection: P2 wind and P2 space required");
  }
  const ReferenceElements ref(space.mesh());
  const Mesh& mesh = space.mesh();
  const int wn = ws.num_nodes();
  std::vector<Mat6> local(static_cast<std::size_t>(mesh.num_triangles()));
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& e = ref.type[Mesh::type(t)];
    const auto nodes = ws.element_nodes(t);
    Mat6 L = Mat6::Zero();
    for (int c = 0; c < 2; ++c) {
      for (int m = 0; m < 6; ++m) {
        const double a = wind.values[c * wn + nodes[static_cast<std::size_t>(m)]];
        if (a != 0.0) L.noalias() += a * e.skew[c][m];
      }
    }
    local[static_cast<std::size_t>(t)] = L;
  }
  Triplets trip;
  for (int c = 0; c < space.components(); ++c) {
    const int off = c * space.num_nodes();
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      const auto nodes = space.element_nodes(t);
      const Mat6& L = local[static_cast<std::size_t>(t)];
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
          if (L(i, j) != 0.0) trip.emplace_back(off + nodes[static_cast<std::size_t>(i)], off + nodes[static_cast<std::size_t>(j)], L(i, j));
        }
      }
    }
  }
  return finish(trip, space.size(), space.size());
}

Eigen::VectorXd assemble_load(const FeSpace& space, const VectorFunction& f) {
  if (space.components() != 2) throw UsageError("assemble_load: vector load on scalar space");
  const ReferenceElements ref(space.mesh());
  const Mesh& mesh = space.mesh();
  const double s = 1.0 / mesh.cells_per_side();
  const int nn = space.num_nodes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& e = ref.type[Mesh::type(t)];
    const auto [ci, cj] = mesh.cell(t);
    const auto nodes = space.element_nodes(t);
    for (int q = 0; q < kQuadPoints; ++q) {
      const auto v = f(ci * s + e.qpoint[q].x, cj * s + e.qpoint[q].y);
      for (int i = 0; i < space.local_nodes(); ++i) {
        const double phi = space.degree() == 2 ? e.phi2[q][i] : e.phi1[q][i];
        const int n = nodes[static_cast<std::size_t>(i)];
        b[n] += e.qw[q] * v[0] * phi;
        b[nn + n] += e.qw[q] * v[1] * phi;
      }
    }
  }
  return b;
}

Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarFunction& f) {
  if (space.components() != 1) throw UsageError("assemble_load: scalar load on vector space");
  const ReferenceElements ref(space.mesh());
  const Mesh& mesh = space.mesh();
  const double s = 1.0 / mesh.cells_per_side();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& e = ref.type[Mesh::type(t)];
    const auto [ci, cj] = mesh.cell(t);
    const auto nodes = space.element_nodes(t);
    for (int q = 0; q < kQuadPoints; ++q) {
      const double v = f(ci * s + e.qpoint[q].x, cj * s + e.qpoint[q].y);
      for (int i = 0; i < space.local_nodes(); ++i) {
        const double phi = space.degree() == 2 ? e.phi2[q][i] : e.phi1[q][i];
        b[nodes[static_cast<std::size_t>(i)]] += e.qw[q] * v * phi;
      }
    }
  }
  return b;
}

Eigen::VectorXd integral_weights(const FeSpace& space) {
  if (space.components() != 1) throw UsageError("integral_weights: scalar space required");
  const ReferenceElements ref(space.mesh());
  Eigen::VectorXd w = Eigen::VectorXd::Zero(space.size());
  for (int t = 0; t < space.mesh().num_triangles(); ++t) {
    const auto& e = ref.type[Mesh::type(t)];
    const auto nodes = space.element_nodes(t);
    for (int i = 0; i < space.local_nodes(); ++i) {
      w[nodes[static_cast<std::size_t>(i)]] += space.degree() == 2 ? e.int_phi2[i] : e.int_phi1[i];
    }
  }
  return w;
}

}  // namespace fracmhd::fem
