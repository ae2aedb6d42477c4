#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fracmhd/errors.hpp"
#include "fracmhd/experiments/config.hpp"
#include "fracmhd/experiments/drivers.hpp"

using namespace fracmhd;
using namespace fracmhd::experiments;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fracmhd_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string read(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  std::getline(is, line);
  return line;
}

ExperimentConfig tiny(Kind kind) {
  ExperimentConfig c = default_config(kind);
  c.solver.mesh_cells = 4;
  c.solver.steps = 3;
  return c;
}

}  // namespace

TEST(Config, KindNamesRoundTrip) {
  for (auto k : {Kind::KernelCheck, Kind::Convergence, Kind::ClassicalLimit, Kind::Vortex,
                 Kind::StabilizationSweep, Kind::ReynoldsSweep, Kind::PhaseMap}) {
    EXPECT_EQ(kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(kind_from_string("vortices"), ConfigError);
}

TEST(Config, DefaultsValidateAndRoundTrip) {
  for (auto k : {Kind::KernelCheck, Kind::Convergence, Kind::ClassicalLimit, Kind::Vortex,
                 Kind::StabilizationSweep, Kind::ReynoldsSweep, Kind::PhaseMap}) {
    const ExperimentConfig c = default_config(k);
    EXPECT_NO_THROW(c.validate()) << to_string(k);
    const std::string ini = c.to_ini();
    EXPECT_EQ(parse_config(ini, k).to_ini(), ini) << to_string(k);
  }
}

TEST(Config, OverridesApply) {
  const auto c = parse_config("[mesh]\ncells = 12\nbc = dirichlet\n[physics]\nRe = 50\n[orders]\nalpha = const 0.7\n",
                              Kind::Vortex);
  EXPECT_EQ(c.solver.mesh_cells, 12);
  EXPECT_EQ(c.solver.bc, fem::Boundary::Dirichlet);
  EXPECT_EQ(c.solver.Re, 50.0);
  EXPECT_EQ(c.solver.Rm, 300.0);
  EXPECT_EQ(c.alpha_spec, "const 0.7");
  EXPECT_EQ(c.beta_spec, "ramp 0.9 0.6");
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("[mesh]\ncels = 12\n", Kind::Vortex), ConfigError);
  EXPECT_THROW(parse_config("[grid]\ncells = 12\n", Kind::Vortex), ConfigError);
  EXPECT_THROW(parse_config("[mesh]\ncells = twelve\n", Kind::Vortex), ConfigError);
  EXPECT_THROW(parse_config("[mesh]\ncells = 0\n", Kind::Vortex), ConfigError);
  EXPECT_THROW(parse_config("[orders]\nalpha = ramp 0.9 1.2\n", Kind::Vortex), ConfigError);
  EXPECT_THROW(parse_config("[orders]\nalpha = classical\n", Kind::Vortex), ConfigError);
  EXPECT_THROW(parse_config("[vortex]\ncases = const-0.6 nonsense\n", Kind::Vortex), ConfigError);
  EXPECT_THROW(parse_config("[phase]\nlo = 0.9\nhi = 0.5\n", Kind::PhaseMap), ConfigError);
  EXPECT_THROW(parse_config("[convergence]\nladder = 20 1\n", Kind::Convergence), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/fracmhd.ini", Kind::Vortex), ConfigError);
}

TEST(Config, ShippedConfigsLoad) {
  const fs::path dir = fs::path(FRACMHD_SOURCE_DIR) / "configs";
  int count = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string stem = entry.path().stem().string();
    for (const char* suffix : {"_case1", "_case2", "_case3", "_spatial"}) {
      if (const auto pos = stem.find(suffix); pos != std::string::npos) stem.erase(pos);
    }
    if (stem.rfind("smoke_", 0) == 0) stem.erase(0, 6);
    for (auto& ch : stem) {
      if (ch == '_') ch = '-';
    }
    EXPECT_NO_THROW(load_config(entry.path().string(), kind_from_string(stem))) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 7);
}

TEST(Config, ProfileSpecs) {
  EXPECT_DOUBLE_EQ(parse_profile("const 0.7", 1.0)(0.3), 0.7);
  EXPECT_DOUBLE_EQ(parse_profile("ramp 0.9 0.6", 0.16)(0.16), 0.6);
  EXPECT_DOUBLE_EQ(parse_profile("step 0.9 0.65 0.08", 0.16)(0.1), 0.65);
  EXPECT_THROW(parse_profile("ramp 0.9", 1.0), ConfigError);
  EXPECT_THROW(parse_profile("wiggle 0.5", 1.0), ConfigError);
}

TEST(Catalog, VortexCasesResolve) {
  for (const auto& name : vortex_case_names()) {
    const auto [a, b] = vortex_case(name, 0.16);
    EXPECT_NO_THROW(parse_profile(a, 0.16)) << name;
    EXPECT_NO_THROW(parse_profile(b, 0.16)) << name;
  }
  const auto [a, b] = vortex_case("AR-UD", 0.16);
  EXPECT_EQ(a, "ramp 0.6 0.9");
  EXPECT_EQ(b, "ramp 0.9 0.6");
}

TEST(Drivers, VortexWritesTimeseriesAndDeltas) {
  ExperimentConfig c = tiny(Kind::Vortex);
  c.cases = {"const-0.6", "AR-UD"};
  const fs::path out = scratch("vortex");
  const auto res = run_vortex(c, out.string());
  ASSERT_EQ(res.runs.size(), 3u);
  EXPECT_EQ(res.runs[0].name, "classical");
  for (double d : res.deltas[0]) EXPECT_EQ(d, 0.0);
  EXPECT_EQ(first_line(out / "timeseries_const-0.6.csv"), "t,K,M,Z,J,Etot,div_u,div_B_pre,div_B_post,picard_iters");
  EXPECT_EQ(first_line(out / "deltas.csv"), "case,dK,dM,dZ,dJ");
  EXPECT_TRUE(fs::exists(out / "config.ini"));
  EXPECT_FALSE(fs::exists(out / "FAILED"));
  EXPECT_EQ(parse_config(read(out / "config.ini"), Kind::Vortex).to_ini(), c.to_ini());
}

TEST(Drivers, SweepReferenceRowHasEmptyDeltas) {
  ExperimentConfig c = tiny(Kind::StabilizationSweep);
  c.sweep_points = {{50, 1}, {2000, 500}};
  const fs::path out = scratch("sweep");
  const auto rows = run_stabilization_sweep(c, out.string());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].d.has_value());
  EXPECT_FALSE(rows[1].d.has_value());
  std::ifstream is(out / "sweep.csv");
  std::string header, r1, r2;
  std::getline(is, header);
  std::getline(is, r1);
  std::getline(is, r2);
  EXPECT_EQ(header, "zeta,chi,max_div_u,max_div_B,dK,dM,dZ,dJ");
  EXPECT_EQ(r2.substr(r2.size() - 4), ",,,,");
}

TEST(Drivers, FailedRunLeavesMarkerAndPartialSeries) {
  ExperimentConfig c = tiny(Kind::ReynoldsSweep);
  c.reynolds = {100};
  c.solver.picard_max = 1;
  const fs::path out = scratch("failed");
  EXPECT_THROW(run_reynolds_sweep(c, out.string()), SolverError);
  EXPECT_TRUE(fs::exists(out / "FAILED"));
  EXPECT_NE(read(out / "FAILED").find("Re100"), std::string::npos);
  // Level 0 is recorded before the failing step.
  EXPECT_EQ(first_line(out / "timeseries_Re100.csv").substr(0, 2), "t,");
}

TEST(Drivers, ConvergenceOrdersFromSecondRung) {
  ExperimentConfig c = default_config(Kind::Convergence);
  c.solver.mesh_cells = 4;
  c.ladder = {2, 4};
  const fs::path out = scratch("convergence");
  const auto rows = run_convergence(c, out.string());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].order_u.has_value());
  EXPECT_TRUE(rows[1].order_u.has_value());
  EXPECT_EQ(first_line(out / "convergence.csv"), "tau,h,err_u,order_u,err_B,order_B");
}

TEST(Drivers, KernelCheckRows) {
  ExperimentConfig c = default_config(Kind::KernelCheck);
  c.kernel_levels = 16;
  c.kernel_horizons = {1.0};
  const fs::path out = scratch("kernel");
  const auto rows = run_kernel_check(c, out.string());
  ASSERT_EQ(rows.size(), profile_catalog(1.0).size());
  for (const auto& r : rows) {
    EXPECT_TRUE(r.prop_b1 && r.prop_b2 && r.prop_b3 && r.A1 && r.A2 && r.A3) << r.profile;
    EXPECT_GE(r.remark_slack, 0.0) << r.profile;
  }
  EXPECT_EQ(first_line(out / "kernel.csv"),
            "profile,prop_b1,prop_b3,prop_b2,gamma,piA,A1,A2,A3,comp_resid,remark_slack");
}

TEST(Cli, ExitCodes) {
  const std::string exe = FRACMHD_CLI;
  const fs::path out = scratch("cli");
  fs::create_directories(out);
  const fs::path bad = out / "bad.ini";
  std::ofstream(bad) << "[mesh]\ncells = -3\n";
  auto run = [](const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  EXPECT_EQ(run(exe + " vortex --config " + bad.string() + " --out " + (out / "a").string()), 2);
  EXPECT_EQ(run(exe + " vortex --out " + (out / "a").string()), 2);
  EXPECT_EQ(run(exe + " nonsense --config " + bad.string()), 2);

  const fs::path fails = out / "fails.ini";
  std::ofstream(fails) << "[mesh]\ncells = 4\n[time]\nsteps = 2\n[solver]\npicard_max = 1\n[reynolds]\nvalues = 100\n";
  EXPECT_EQ(run(exe + " reynolds-sweep --config " + fails.string() + " --out " + (out / "b").string()), 3);

  const fs::path good = out / "good.ini";
  std::ofstream(good) << "[kernel]\nlevels = 8\nhorizons = 1\n";
  EXPECT_EQ(run("FRACMHD_OUT=" + (out / "root").string() + " " + exe + " kernel-check --config " + good.string()), 0);
  EXPECT_TRUE(fs::exists(out / "root" / "kernel-check" / "kernel.csv"));
}
