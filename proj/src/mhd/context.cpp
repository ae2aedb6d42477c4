#include "fracmhd/mhd/context.hpp"

#include "fracmhd/errors.hpp"

namespace fracmhd::mhd {

std::shared_ptr<const FemContext> FemContext::build(int cells, fem::Boundary bc) {
  using fem::Boundary;
  using fem::FeSpace;
  if (bc == Boundary::Free) throw ConfigError("FemContext: boundary must be dirichlet or periodic");
  auto ctx = std::make_shared<FemContext>();
  ctx->mesh = std::make_shared<const fem::Mesh>(cells);
  ctx->bc = bc;
  const Boundary open = bc == Boundary::Periodic ? Boundary::Periodic : Boundary::Free;
  ctx->vel = std::make_shared<const FeSpace>(ctx->mesh, 2, 2, bc);
  ctx->pres = std::make_shared<const FeSpace>(ctx->mesh, 1, 1, open, true);
  ctx->potential = std::make_shared<const FeSpace>(ctx->mesh, 2, 1, open, true);
  ctx->proj = std::make_shared<const FeSpace>(ctx->mesh, 2, 2, open);
  ctx->ref = std::make_unique<fem::ReferenceElements>(*ctx->mesh);
  ctx->mass = fem::assemble_operator(fem::OperatorKind::Mass, *ctx->vel, *ctx->vel);
  return ctx;
}

}  // namespace fracmhd::mhd
