#include "fracmhd/mhd/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "fracmhd/errors.hpp"

namespace fracmhd::mhd {

static_assert(std::endian::native == std::endian::little, "checkpoints assume a little-endian host");

namespace {

constexpr char kMagic[8] = {'F', 'R', 'A', 'C', 'M', 'H', 'D', '1'};

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put(std::ofstream& os, const Eigen::VectorXd& v) {
  os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw ConfigError("checkpoint: truncated file");
  return v;
}

Eigen::VectorXd get(std::ifstream& is, std::int64_t n) {
  Eigen::VectorXd v(n);
  if (!is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)))) {
    throw ConfigError("checkpoint: truncated file");
  }
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const SolverConfig& config, const SimState& state) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("checkpoint: cannot write " + path);
  os.write(kMagic, sizeof kMagic);
  put(os, fnv1a(config.describe()));
  put(os, static_cast<std::int64_t>(state.level));
  put(os, static_cast<std::int64_t>(state.u.values.size()));
  put(os, static_cast<std::int64_t>(state.p.values.size()));
  put(os, state.u.values);
  put(os, state.p.values);
  put(os, state.B.values);
  for (const auto& h : state.u_history) put(os, h);
  for (const auto& h : state.B_history) put(os, h);
  if (!os) throw ConfigError("checkpoint: write failed for " + path);
}

SimState load_checkpoint(const std::string& path, const SolverConfig& config) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("checkpoint: cannot open " + path);
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw ConfigError("checkpoint: bad header in " + path);
  }
  if (get<std::uint64_t>(is) != fnv1a(config.describe())) {
    throw ConfigError("checkpoint: written for a different configuration");
  }
  const auto level = get<std::int64_t>(is);
  const auto len = get<std::int64_t>(is);
  const auto plen = get<std::int64_t>(is);
  if (level < 0 || level > config.steps || len <= 0 || plen <= 0) {
    throw ConfigError("checkpoint: inconsistent sizes");
  }
  SimState s;
  s.level = static_cast<int>(level);
  s.u.values = get(is, len);
  s.p.values = get(is, plen);
  s.B.values = get(is, len);
  for (std::int64_t k = 0; k <= level; ++k) s.u_history.push_back(get(is, len));
  for (std::int64_t k = 0; k <= level; ++k) s.B_history.push_back(get(is, len));
  if (is.peek() != std::ifstream::traits_type::eof()) throw ConfigError("checkpoint: trailing data");
  return s;
}

}  // namespace fracmhd::mhd
