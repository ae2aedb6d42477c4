#include "fracmhd/experiments/config.hpp"
#include "fracmhd/experiments/drivers.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fracmhd/errors.hpp"

namespace fracmhd::experiments {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, Kind>& kinds() {
  static const std::map<std::string, Kind> m{
      {"kernel-check", Kind::KernelCheck},
      {"convergence", Kind::Convergence},
      {"classical-limit", Kind::ClassicalLimit},
      {"vortex", Kind::Vortex},
      {"stabilization-sweep", Kind::StabilizationSweep},
      {"reynolds-sweep", Kind::ReynoldsSweep},
      {"phase-map", Kind::PhaseMap},
  };
  return m;
}

[[noreturn]] void fail(const std::string& what) { throw ConfigError("config: " + what); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

double to_double(const std::string& s, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail(key + ": not a number: '" + s + "'");
  }
  if (pos != s.size()) fail(key + ": not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s, const std::string& key) {
  const double v = to_double(s, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) fail(key + ": not an integer: '" + s + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0") return false;
  fail(key + ": not a boolean: '" + s + "'");
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::vector<double> doubles(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const auto& w : words(s)) out.push_back(to_double(w, key));
  return out;
}

std::pair<double, double> point(const std::string& w, const std::string& key) {
  const auto colon = w.find(':');
  if (colon == std::string::npos) fail(key + ": expected zeta:chi, got '" + w + "'");
  return {to_double(w.substr(0, colon), key), to_double(w.substr(colon + 1), key)};
}

const char* initial_name(InitialKind k) {
  switch (k) {
    case InitialKind::Zero: return "zero";
    case InitialKind::Vortex: return "vortex";
    case InitialKind::Limit: return "limit";
  }
  return "?";
}

}  // namespace

const char* to_string(Kind k) {
  for (const auto& [name, kind] : kinds()) {
    if (kind == k) return name.c_str();
  }
  return "?";
}

Kind kind_from_string(const std::string& name) {
  const auto it = kinds().find(name);
  if (it == kinds().end()) fail("unknown experiment '" + name + "'");
  return it->second;
}

OrderProfile parse_profile(const std::string& spec, double T) {
  const auto w = words(spec);
  if (w.empty()) fail("empty order profile");
  std::vector<double> a;
  for (std::size_t i = 1; i < w.size(); ++i) a.push_back(to_double(w[i], "order profile"));
  auto need = [&](std::size_t n) {
    if (a.size() != n) fail("order profile '" + spec + "' expects " + std::to_string(n) + " numbers");
  };
  const std::string& k = w[0];
  if (k == "const") {
    need(1);
    return {ConstantOrder{a[0]}, T};
  }
  if (k == "ramp") {
    need(2);
    return {LinearRamp{a[0], a[1], T}, T};
  }
  if (k == "step") {
    need(3);
    return {StepChange{a[0], a[1], a[2]}, T};
  }
  if (k == "sin") {
    need(3);
    return {Sinusoidal{a[0], a[1], a[2]}, T};
  }
  if (k == "smooth") {
    need(4);
    return {SmoothStep{a[0], a[1], a[2], a[3]}, T};
  }
  if (k == "eps") {
    need(2);
    return {EpsilonLimit{a[0], a[1], T}, T};
  }
  fail("unknown order profile '" + k + "'");
}

ExperimentConfig default_config(Kind kind) {
  ExperimentConfig c;
  c.kind = kind;
  auto& s = c.solver;
  auto vortex_base = [&] {
    s.mesh_cells = 96;
    s.bc = fem::Boundary::Periodic;
    s.T = 0.16;
    s.steps = 320;
    s.Re = s.Rm = 300.0;
    s.zeta = 2000.0;
    s.chi = 500.0;
    c.initial = InitialKind::Vortex;
    c.alpha_spec = c.beta_spec = "ramp 0.9 0.6";
  };
  switch (kind) {
    case Kind::KernelCheck:
      break;
    case Kind::Convergence:
      s.mesh_cells = 64;
      s.bc = fem::Boundary::Dirichlet;
      s.T = 1.0;
      s.steps = 1000;
      s.Re = s.Rm = 1.0;
      s.zeta = 0.5;
      s.chi = 0.125;
      c.initial = InitialKind::Zero;
      c.alpha_spec = c.beta_spec = "ramp 0.6 0.95";
      c.convergence_mode = "temporal";
      c.ladder = {20, 40, 80, 160, 320};
      break;
    case Kind::ClassicalLimit:
      s.mesh_cells = 48;
      s.bc = fem::Boundary::Dirichlet;
      s.T = 0.5;
      s.steps = 100;
      s.Re = s.Rm = 200.0;
      s.zeta = 0.5;
      s.chi = 0.125;
      c.initial = InitialKind::Limit;
      c.eps = {0.1, 0.05, 0.03, 0.02, 0.01, 0.005, 1e-3, 1e-4, 1e-5, 1e-6};
      c.delta = 1e-10;
      c.alpha_spec = c.beta_spec = "eps 0.1 1e-10";
      break;
    case Kind::Vortex:
      vortex_base();
      c.cases = {"all"};
      break;
    case Kind::StabilizationSweep:
      vortex_base();
      c.sweep_points = {{50, 1},    {100, 1},   {200, 1},   {500, 1},   {1000, 1},   {2000, 1},
                        {2000, 10}, {2000, 50}, {2000, 100}, {2000, 200}, {2000, 500}, {2000, 1000}};
      break;
    case Kind::ReynoldsSweep:
      vortex_base();
      c.reynolds = {100, 300, 500, 700};
      break;
    case Kind::PhaseMap:
      vortex_base();
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (workers < 1) fail("workers must be >= 1");
  if (kind == Kind::KernelCheck) {
    if (kernel_levels < 1) fail("kernel levels must be >= 1");
    if (kernel_horizons.empty()) fail("kernel horizons must not be empty");
    for (double T : kernel_horizons) {
      if (!(T > 0.0)) fail("kernel horizons must be positive");
    }
    return;
  }
  resolve_solver(*this).validate();
  switch (kind) {
    case Kind::Convergence:
      if (convergence_mode != "temporal" && convergence_mode != "spatial") {
        fail("convergence mode must be temporal or spatial");
      }
      if (ladder.empty()) fail("convergence ladder must not be empty");
      for (int v : ladder) {
        if (v < 2) fail("convergence ladder entries must be >= 2");
      }
      if (convergence_mode == "spatial") {
        ExperimentConfig finest = *this;
        finest.solver.mesh_cells = *std::max_element(ladder.begin(), ladder.end());
        resolve_solver(finest).validate();
      } else {
        ExperimentConfig finest = *this;
        finest.solver.steps = *std::max_element(ladder.begin(), ladder.end());
        resolve_solver(finest).validate();
      }
      break;
    case Kind::ClassicalLimit:
      if (eps.empty()) fail("classical_limit eps list must not be empty");
      for (double e : eps) parse_profile("eps " + fmt(e) + " " + fmt(delta), solver.T);
      break;
    case Kind::Vortex:
      if (cases.empty()) fail("vortex cases must not be empty");
      if (!(cases.size() == 1 && cases[0] == "all")) {
        for (const auto& name : cases) vortex_case(name, solver.T);
      }
      break;
    case Kind::StabilizationSweep:
      if (sweep_points.empty()) fail("sweep points must not be empty");
      for (const auto& [z, x] : sweep_points) {
        if (!(z >= 0.0) || !(x >= 0.0)) fail("sweep points must be nonnegative");
      }
      break;
    case Kind::ReynoldsSweep:
      if (reynolds.empty()) fail("reynolds values must not be empty");
      for (double r : reynolds) {
        if (!(r > 0.0)) fail("reynolds values must be positive");
      }
      break;
    case Kind::PhaseMap:
      if (phase_grid < 1) fail("phase grid must be >= 1");
      if (!(phase_lo > 0.0) || !(phase_hi < 1.0) || !(phase_lo <= phase_hi)) {
        fail("phase range must satisfy 0 < lo <= hi < 1");
      }
      if (phase_grid == 1 && phase_lo != phase_hi) fail("a 1x1 phase grid needs lo == hi");
      break;
    case Kind::KernelCheck:
      break;
  }
}

mhd::SolverConfig resolve_solver(const ExperimentConfig& cfg) {
  mhd::SolverConfig s = cfg.solver;
  s.alpha.reset();
  s.beta.reset();
  s.classical = cfg.alpha_spec == "classical" || cfg.beta_spec == "classical";
  if (s.classical && cfg.alpha_spec != cfg.beta_spec) {
    fail("classical must be selected for both alpha and beta");
  }
  if (!s.classical) {
    s.alpha = parse_profile(cfg.alpha_spec, s.T);
    s.beta = parse_profile(cfg.beta_spec, s.T);
  }
  return s;
}

mhd::InitialData initial_data(InitialKind k) {
  switch (k) {
    case InitialKind::Vortex: return mhd::vortex_initial_data();
    case InitialKind::Limit: return mhd::limit_initial_data();
    case InitialKind::Zero: break;
  }
  return {};
}

std::string ExperimentConfig::to_ini() const {
  std::ostringstream os;
  os.precision(17);
  const auto& s = solver;
  os << "; kind = " << to_string(kind) << "\n";
  os << "[run]\nworkers = " << workers << "\n\n";
  if (kind == Kind::KernelCheck) {
    os << "[kernel]\nlevels = " << kernel_levels << "\nhorizons = " << join(kernel_horizons) << "\n";
    return os.str();
  }
  os << "[mesh]\ncells = " << s.mesh_cells << "\nbc = " << fem::to_string(s.bc) << "\n\n";
  os << "[time]\nT = " << s.T << "\nsteps = " << s.steps << "\n\n";
  os << "[physics]\nRe = " << s.Re << "\nRm = " << s.Rm << "\nzeta = " << s.zeta << "\nchi = " << s.chi << "\n\n";
  os << "[solver]\npicard_tol = " << s.picard_tol << "\npicard_max = " << s.picard_max
     << "\nlinear_tol = " << s.linear.tol
     << "\nbackend = " << (s.linear.backend == fem::Backend::Direct ? "direct" : "krylov")
     << "\ncleaning = " << (s.cleaning ? "true" : "false")
     << "\ncheck_inequalities = " << (s.check_inequalities ? "true" : "false") << "\n\n";
  os << "[orders]\nalpha = " << alpha_spec << "\nbeta = " << beta_spec << "\n\n";
  os << "[initial]\ndata = " << initial_name(initial) << "\n";
  switch (kind) {
    case Kind::Convergence:
      os << "\n[convergence]\nmode = " << convergence_mode << "\nladder = " << join(ladder) << "\n";
      break;
    case Kind::ClassicalLimit:
      os << "\n[classical_limit]\neps = " << join(eps) << "\ndelta = " << delta << "\n";
      break;
    case Kind::Vortex:
      os << "\n[vortex]\ncases = " << join(cases) << "\n";
      break;
    case Kind::StabilizationSweep: {
      os << "\n[sweep]\npoints =";
      for (const auto& [z, x] : sweep_points) os << " " << z << ":" << x;
      os << "\nreference = " << sweep_reference.first << ":" << sweep_reference.second << "\n";
      break;
    }
    case Kind::ReynoldsSweep:
      os << "\n[reynolds]\nvalues = " << join(reynolds) << "\n";
      break;
    case Kind::PhaseMap:
      os << "\n[phase]\ngrid = " << phase_grid << "\nlo = " << phase_lo << "\nhi = " << phase_hi << "\n";
      break;
    case Kind::KernelCheck:
      break;
  }
  return os.str();
}

ExperimentConfig parse_config(const std::string& text, Kind kind) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(std::string("parse error: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  ExperimentConfig c = default_config(kind);
  auto& s = c.solver;

  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, std::map<std::string, Setter>> schema{
      {"run", {{"workers", [&](const std::string& v) { c.workers = to_int(v, "run.workers"); }}}},
      {"mesh",
       {{"cells", [&](const std::string& v) { s.mesh_cells = to_int(v, "mesh.cells"); }},
        {"bc",
         [&](const std::string& v) {
           if (v == "periodic") {
             s.bc = fem::Boundary::Periodic;
           } else if (v == "dirichlet") {
             s.bc = fem::Boundary::Dirichlet;
           } else {
             fail("mesh.bc must be periodic or dirichlet");
           }
         }}}},
      {"time",
       {{"T", [&](const std::string& v) { s.T = to_double(v, "time.T"); }},
        {"steps", [&](const std::string& v) { s.steps = to_int(v, "time.steps"); }}}},
      {"physics",
       {{"Re", [&](const std::string& v) { s.Re = to_double(v, "physics.Re"); }},
        {"Rm", [&](const std::string& v) { s.Rm = to_double(v, "physics.Rm"); }},
        {"zeta", [&](const std::string& v) { s.zeta = to_double(v, "physics.zeta"); }},
        {"chi", [&](const std::string& v) { s.chi = to_double(v, "physics.chi"); }}}},
      {"solver",
       {{"picard_tol", [&](const std::string& v) { s.picard_tol = to_double(v, "solver.picard_tol"); }},
        {"picard_max", [&](const std::string& v) { s.picard_max = to_int(v, "solver.picard_max"); }},
        {"linear_tol", [&](const std::string& v) { s.linear.tol = to_double(v, "solver.linear_tol"); }},
        {"backend",
         [&](const std::string& v) {
           if (v == "direct") {
             s.linear.backend = fem::Backend::Direct;
           } else if (v == "krylov") {
             s.linear.backend = fem::Backend::Krylov;
           } else {
             fail("solver.backend must be direct or krylov");
           }
         }},
        {"cleaning", [&](const std::string& v) { s.cleaning = to_bool(v, "solver.cleaning"); }},
        {"check_inequalities",
         [&](const std::string& v) { s.check_inequalities = to_bool(v, "solver.check_inequalities"); }}}},
      {"orders",
       {{"alpha", [&](const std::string& v) { c.alpha_spec = v; }},
        {"beta", [&](const std::string& v) { c.beta_spec = v; }}}},
      {"initial",
       {{"data",
         [&](const std::string& v) {
           if (v == "zero") {
             c.initial = InitialKind::Zero;
           } else if (v == "vortex") {
             c.initial = InitialKind::Vortex;
           } else if (v == "limit") {
             c.initial = InitialKind::Limit;
           } else {
             fail("initial.data must be zero, vortex or limit");
           }
         }}}},
      {"convergence",
       {{"mode", [&](const std::string& v) { c.convergence_mode = v; }},
        {"ladder",
         [&](const std::string& v) {
           c.ladder.clear();
           for (const auto& w : words(v)) c.ladder.push_back(to_int(w, "convergence.ladder"));
         }}}},
      {"classical_limit",
       {{"eps", [&](const std::string& v) { c.eps = doubles(v, "classical_limit.eps"); }},
        {"delta", [&](const std::string& v) { c.delta = to_double(v, "classical_limit.delta"); }}}},
      {"vortex", {{"cases", [&](const std::string& v) { c.cases = words(v); }}}},
      {"sweep",
       {{"points",
         [&](const std::string& v) {
           c.sweep_points.clear();
           for (const auto& w : words(v)) c.sweep_points.push_back(point(w, "sweep.points"));
         }},
        {"reference", [&](const std::string& v) { c.sweep_reference = point(v, "sweep.reference"); }}}},
      {"reynolds", {{"values", [&](const std::string& v) { c.reynolds = doubles(v, "reynolds.values"); }}}},
      {"phase",
       {{"grid", [&](const std::string& v) { c.phase_grid = to_int(v, "phase.grid"); }},
        {"lo", [&](const std::string& v) { c.phase_lo = to_double(v, "phase.lo"); }},
        {"hi", [&](const std::string& v) { c.phase_hi = to_double(v, "phase.hi"); }}}},
      {"kernel",
       {{"levels", [&](const std::string& v) { c.kernel_levels = to_int(v, "kernel.levels"); }},
        {"horizons", [&](const std::string& v) { c.kernel_horizons = doubles(v, "kernel.horizons"); }}}},
  };

  for (const auto& [section, body] : tree) {
    const auto sec = schema.find(section);
    if (sec == schema.end()) {
      if (body.empty()) fail("key '" + section + "' outside any section");
      fail("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      const auto k = sec->second.find(key);
      if (k == sec->second.end()) fail("unknown key '" + key + "' in [" + section + "]");
      k->second(value.get_value<std::string>());
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path, Kind kind) {
  std::ifstream is(path);
  if (!is) fail("cannot read " + path);
  std::ostringstream text;
  text << is.rdbuf();
  return parse_config(text.str(), kind);
}

}  // namespace fracmhd::experiments
