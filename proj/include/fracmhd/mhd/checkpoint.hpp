#pragma once

// Binary restart files.
//
// Layout, all integers and floats little-endian:
//   8 bytes   magic "FRACMHD1"
//   u64       FNV-1a hash of SolverConfig::describe()
//   i64       level n
//   i64       velocity/magnetic vector length L, pressure length P
//   f64[L]    u, f64[P] p, f64[L] B
//   f64[L]    u^0 .. u^n, then f64[L] B^0 .. B^n

#include <cstdint>
#include <string>

#include "fracmhd/mhd/simulation.hpp"

namespace fracmhd::mhd {

void save_checkpoint(const std::string& path, const SolverConfig& config, const SimState& state);

/// Throws ConfigError when the file is malformed or was written for a
/// different configuration. Fields carry no space; the resuming Simulation
/// rebinds them.
SimState load_checkpoint(const std::string& path, const SolverConfig& config);

}  // namespace fracmhd::mhd
