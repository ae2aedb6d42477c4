#pragma once

#include <memory>

#include "fracmhd/fem/assembly.hpp"
#include "fracmhd/fem/mesh.hpp"
#include "fracmhd/fem/reference.hpp"
#include "fracmhd/fem/space.hpp"

namespace fracmhd::mhd {

/// Mesh, spaces and the operators shared by every step of a run.
///
/// u and B live on the same P2 vector space. The cleaning potential uses the
/// P2 scalar space with the same node numbering (periodic, or free in place of
/// Dirichlet), so a B field can be read on `proj` without renumbering.
struct FemContext {
  std::shared_ptr<const fem::Mesh> mesh;
  fem::Boundary bc;
  std::shared_ptr<const fem::FeSpace> vel;       // P2^2, Dirichlet or periodic
  std::shared_ptr<const fem::FeSpace> pres;      // P1, zero mean
  std::shared_ptr<const fem::FeSpace> potential; // P2 scalar, zero mean
  std::shared_ptr<const fem::FeSpace> proj;      // P2^2 without boundary constraints
  std::unique_ptr<fem::ReferenceElements> ref;
  fem::SparseMatrix mass;  // P2 vector mass on vel (full indexing)

  static std::shared_ptr<const FemContext> build(int cells, fem::Boundary bc);
};

}  // namespace fracmhd::mhd
