#include "fracmhd/mhd/config.hpp"

#include <cmath>
#include <sstream>

#include "fracmhd/errors.hpp"

namespace fracmhd::mhd {

std::size_t SolverConfig::history_bytes() const {
  const auto lattice = static_cast<std::size_t>(2 * mesh_cells);
  const std::size_t nodes = bc == fem::Boundary::Periodic ? lattice * lattice : (lattice + 1) * (lattice + 1);
  return 2 * static_cast<std::size_t>(steps + 1) * 2 * nodes * sizeof(double);
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("solver config: " + what); };
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(std::string(name) + " must be positive");
  };
  if (mesh_cells < 2) fail("mesh_cells must be >= 2");
  if (bc == fem::Boundary::Free) fail("boundary must be dirichlet or periodic");
  positive(Re, "Re");
  positive(Rm, "Rm");
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) fail("zeta must be >= 0");
  if (!(chi >= 0.0) || !std::isfinite(chi)) fail("chi must be >= 0");
  positive(T, "T");
  if (steps < 0) fail("steps must be >= 0");
  positive(picard_tol, "picard_tol");
  if (picard_max < 1) fail("picard_max must be >= 1");
  positive(linear.tol, "linear tolerance");
  if (!classical) {
    if (!alpha || !beta) fail("order profiles alpha and beta are required unless classical");
    for (const auto* p : {&*alpha, &*beta}) {
      if (p->horizon() < T * (1.0 - 1e-12)) fail("order profile horizon shorter than T");
    }
  }
  if (history_bytes() > history_budget_bytes) {
    std::ostringstream os;
    os << "history needs " << history_bytes() << " bytes, budget " << history_budget_bytes;
    fail(os.str());
  }
}

std::string SolverConfig::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "M=" << mesh_cells << " bc=" << fem::to_string(bc) << " Re=" << Re << " Rm=" << Rm
     << " zeta=" << zeta << " chi=" << chi << " T=" << T << " N=" << steps
     << " picard_tol=" << picard_tol << " picard_max=" << picard_max
     << " cleaning=" << cleaning << " classical=" << classical;
  if (alpha) os << " alpha=" << alpha->describe();
  if (beta) os << " beta=" << beta->describe();
  os << " linear_tol=" << linear.tol;
  return os.str();
}

Nondimensional nondimensionalize(const PhysicalParams& phys, const OrderProfile& alpha,
                                 const OrderProfile& beta) {
  for (double v : {phys.rho0, phys.mu, phys.eta, phys.mu0, phys.S0, phys.U0}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("nondimensionalize: parameters must be positive");
  }
  const double T0 = phys.theta();
  const double B0 = phys.U0 * std::sqrt(phys.rho0 * phys.mu0);
  return Nondimensional{
      phys.rho0 * phys.U0 * phys.S0 / phys.mu,
      phys.U0 * phys.S0 / phys.eta,
      T0,
      B0,
      phys.S0 / (phys.rho0 * phys.U0 * phys.U0),
      T0 / B0,
      alpha.time_scaled(T0),
      beta.time_scaled(T0),
  };
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace fracmhd::mhd
