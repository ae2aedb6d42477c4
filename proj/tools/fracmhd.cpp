// Batch driver: fracmhd <subcommand> --config <path> [--out <dir>] [--workers k]

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "fracmhd/errors.hpp"
#include "fracmhd/experiments/config.hpp"
#include "fracmhd/experiments/drivers.hpp"

namespace fx = fracmhd::experiments;

int main(int argc, char** argv) {
  CLI::App app{"Variable-order time-fractional MHD experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int workers = 0;
  for (auto kind : {fx::Kind::KernelCheck, fx::Kind::Convergence, fx::Kind::ClassicalLimit, fx::Kind::Vortex,
                    fx::Kind::StabilizationSweep, fx::Kind::ReynoldsSweep, fx::Kind::PhaseMap}) {
    auto* sub = app.add_subcommand(fx::to_string(kind));
    sub->add_option("--config", config_path, "INI configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (default $FRACMHD_OUT/<subcommand>)");
    sub->add_option("--workers", workers, "parallel runs")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    fx::ExperimentConfig cfg = fx::load_config(config_path, fx::kind_from_string(name));
    if (workers > 0) cfg.workers = workers;
    if (out_dir.empty()) {
      const char* root = std::getenv("FRACMHD_OUT");
      out_dir = (std::filesystem::path(root && *root ? root : "out") / name).string();
    }
    fx::run_experiment(cfg, out_dir);
    std::cerr << "wrote " << out_dir << '\n';
    return 0;
  } catch (const fracmhd::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const fracmhd::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
