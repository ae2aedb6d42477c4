#include "fracmhd/experiments/drivers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "fracmhd/errors.hpp"
#include "fracmhd/kernel_checks.hpp"
#include "fracmhd/mhd/simulation.hpp"

namespace fracmhd::experiments {

namespace fs = std::filesystem;
using diagnostics::column;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::mutex log_mutex;

void log(const std::string& msg) {
  std::lock_guard lock(log_mutex);
  std::cerr << msg << '\n';
}

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string short_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

class Csv {
 public:
  Csv(const fs::path& path, const std::string& header) : out_(path) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    out_ << header << '\n';
  }

  template <class... Cells>
  void row(const Cells&... cells) {
    std::string line;
    ((line += cell(cells), line += ','), ...);
    line.pop_back();
    out_ << line << '\n';
  }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(const std::optional<double>& v) { return num(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  std::ofstream out_;
};

void prepare(const ExperimentConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::ofstream echo(fs::path(out_dir) / "config.ini");
  if (!echo) throw ConfigError("cannot write to output directory " + out_dir);
  echo << cfg.to_ini();
  fs::remove(fs::path(out_dir) / "FAILED");
}

using LevelSink = std::function<void(const DiagRecord&, const mhd::SimState&)>;

/// Runs one simulation to the end, keeping the records written so far when a
/// step fails.
RunResult run_one(const std::string& name, const mhd::SolverConfig& s, const mhd::InitialData& init,
                  const mhd::Forcing& forcing = {}, const LevelSink& sink = {}) {
  RunResult r;
  r.name = name;
  log("[" + name + "] start: M=" + std::to_string(s.mesh_cells) + " steps=" + std::to_string(s.steps));
  try {
    mhd::Simulation sim(s, init, forcing);
    r.records.push_back(sim.record());
    if (sink) sink(r.records.back(), sim.state());
    while (!sim.finished()) {
      const mhd::StepReport rep = sim.step();
      r.records.push_back(sim.record(&rep));
      r.max_picard = std::max(r.max_picard, rep.picard_iterations);
      r.worst_violation = std::max(r.worst_violation, rep.worst_violation);
      if (sink) sink(r.records.back(), sim.state());
      if (rep.level % 50 == 0) log("[" + name + "] level " + std::to_string(rep.level));
    }
    log("[" + name + "] done, max Picard " + std::to_string(r.max_picard));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    r.error = e.what();
    log("[" + name + "] FAILED: " + r.error);
  }
  return r;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads; results stay indexed.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  const int w = std::max(1, std::min(workers, n));
  if (w == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  for (int k = 0; k < w; ++k) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void write_run(const std::string& out_dir, const RunResult& r) {
  write_timeseries((fs::path(out_dir) / ("timeseries_" + r.name + ".csv")).string(), r.records);
}

/// Writes the FAILED marker and raises SolverError when any run failed.
void finish(const std::string& out_dir, const std::vector<const RunResult*>& runs) {
  std::ostringstream failed;
  int count = 0;
  for (const auto* r : runs) {
    if (r->error.empty()) continue;
    failed << r->name << ": " << r->error << '\n';
    ++count;
  }
  if (count == 0) return;
  std::ofstream(fs::path(out_dir) / "FAILED") << failed.str();
  throw SolverError(std::to_string(count) + " run(s) failed; see " + (fs::path(out_dir) / "FAILED").string());
}

std::array<double, 4> deviations(const RunResult& run, const RunResult& ref, double tau) {
  std::array<double, 4> d{kNaN, kNaN, kNaN, kNaN};
  if (!run.error.empty() || !ref.error.empty()) return d;
  for (int m = 0; m < 4; ++m) {
    const auto q = column(run.records, static_cast<diagnostics::Measure>(m));
    const auto r = column(ref.records, static_cast<diagnostics::Measure>(m));
    d[static_cast<std::size_t>(m)] = diagnostics::rel_dev_L1(q, r, tau);
  }
  return d;
}

// Over solved levels only; level 0 is the interpolated initial data.
double max_of(const std::vector<DiagRecord>& recs, double DiagRecord::*field) {
  double m = 0.0;
  for (std::size_t i = 1; i < recs.size(); ++i) m = std::max(m, recs[i].*field);
  return m;
}

mhd::SolverConfig with_orders(mhd::SolverConfig s, const std::string& alpha, const std::string& beta) {
  s.alpha.reset();
  s.beta.reset();
  s.classical = alpha == "classical";
  if (!s.classical) {
    s.alpha = parse_profile(alpha, s.T);
    s.beta = parse_profile(beta, s.T);
  }
  return s;
}

}  // namespace

void write_timeseries(const std::string& path, const std::vector<DiagRecord>& records) {
  Csv csv(path, "t,K,M,Z,J,Etot,div_u,div_B_pre,div_B_post,picard_iters");
  for (const auto& r : records) {
    csv.row(r.t, r.K, r.M, r.Z, r.J, r.Etot, r.div_u, r.div_B_pre, r.div_B_post, r.picard_iters);
  }
}

std::vector<std::string> vortex_case_names() {
  return {"const-0.6", "const-0.75", "const-0.9", "ramp",  "step",  "sin",  "smooth",
          "AR-UD",     "AR-DU",      "AR-UC",     "AR-DC", "AR-CU", "AR-CD"};
}

std::pair<std::string, std::string> vortex_case(const std::string& name, double T) {
  const std::string up = "ramp 0.6 0.9";
  const std::string down = "ramp 0.9 0.6";
  const std::string flat = "const 0.75";
  if (name == "const-0.6") return {"const 0.6", "const 0.6"};
  if (name == "const-0.75") return {flat, flat};
  if (name == "const-0.9") return {"const 0.9", "const 0.9"};
  if (name == "ramp") return {down, down};
  if (name == "step") {
    const std::string s = "step 0.9 0.65 " + short_num(T / 2);
    return {s, s};
  }
  if (name == "sin") {
    const std::string s = "sin 0.75 0.15 " + short_num(T / 2);
    return {s, s};
  }
  if (name == "smooth") {
    const std::string s = "smooth 0.8 0.5 " + short_num(0.4 * T) + " 0.05";
    return {s, s};
  }
  if (name == "AR-UD") return {up, down};
  if (name == "AR-DU") return {down, up};
  if (name == "AR-UC") return {up, flat};
  if (name == "AR-DC") return {down, flat};
  if (name == "AR-CU") return {flat, up};
  if (name == "AR-CD") return {flat, down};
  throw ConfigError("config: unknown vortex case '" + name + "'");
}

std::vector<std::pair<std::string, OrderProfile>> profile_catalog(double T) {
  std::vector<std::pair<std::string, OrderProfile>> out;
  auto add = [&](const std::string& name, const std::string& spec) {
    out.emplace_back(name, parse_profile(spec, T));
  };
  add("manufactured-ramp", "ramp 0.6 0.95");
  add("manufactured-sin", "sin 0.75 0.2 " + short_num(T / 2));
  add("manufactured-smooth", "smooth 0.6 0.95 0.4 0.05");
  for (double e : {0.1, 0.01, 1e-3, 1e-4}) add("limit-eps" + short_num(e), "eps " + short_num(e) + " 1e-10");
  std::vector<std::string> seen;
  for (const auto& name : vortex_case_names()) {
    const auto [a, b] = vortex_case(name, T);
    for (const auto& spec : {a, b}) {
      if (std::find(seen.begin(), seen.end(), spec) != seen.end()) continue;
      seen.push_back(spec);
      std::string label = spec;
      std::replace(label.begin(), label.end(), ' ', '_');
      add("vortex-" + label, spec);
    }
  }
  return out;
}

std::vector<KernelRowReport> run_kernel_check(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(cfg, out_dir);
  std::vector<std::pair<std::string, OrderProfile>> jobs;
  for (double T : cfg.kernel_horizons) {
    for (auto& [name, p] : profile_catalog(T)) jobs.emplace_back(name + "@T=" + short_num(T), p);
  }
  std::vector<KernelRowReport> rows(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), cfg.workers, [&](int i) {
    const auto& [name, profile] = jobs[static_cast<std::size_t>(i)];
    const KernelTable table(TimeGrid::from_horizon(profile.horizon(), cfg.kernel_levels), profile);
    const auto props = kernel_properties_check(table);
    const auto assumptions = verify_kernel_assumptions(table);
    const auto comp = complementary_summary(table);
    KernelRowReport& r = rows[static_cast<std::size_t>(i)];
    r.profile = name;
    r.prop_b1 = props.prop_b1.value_or(false);
    r.prop_b3 = props.prop_b3.value_or(false);
    r.prop_b2 = props.prop_b2.value_or(false);
    r.gamma = props.gamma;
    r.pi_A = assumptions.pi_A;
    r.A1 = assumptions.A1.value_or(false);
    r.A2 = assumptions.A2.value_or(false);
    r.A3 = assumptions.A3.value_or(false);
    r.comp_resid = comp.max_residual;
    r.comp_min_entry = comp.min_entry;
    r.remark_slack = comp.remark_slack();
  });
  Csv csv(fs::path(out_dir) / "kernel.csv",
          "profile,prop_b1,prop_b3,prop_b2,gamma,piA,A1,A2,A3,comp_resid,remark_slack");
  for (const auto& r : rows) {
    csv.row(r.profile, r.prop_b1, r.prop_b3, r.prop_b2, r.gamma, r.pi_A, r.A1, r.A2, r.A3, r.comp_resid,
            r.remark_slack);
  }
  return rows;
}

std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(cfg, out_dir);
  const bool temporal = cfg.convergence_mode == "temporal";
  const mhd::SolverConfig base = resolve_solver(cfg);
  std::vector<ConvergenceRow> rows(cfg.ladder.size());
  parallel_for(static_cast<int>(rows.size()), cfg.workers, [&](int i) {
    mhd::SolverConfig s = base;
    const int rung = cfg.ladder[static_cast<std::size_t>(i)];
    (temporal ? s.steps : s.mesh_cells) = rung;
    s = with_orders(s, cfg.alpha_spec, cfg.beta_spec);
    const auto forcing = mhd::manufactured_forcing(s.Re, s.Rm, s.alpha ? &*s.alpha : nullptr,
                                                   s.beta ? &*s.beta : nullptr);
    diagnostics::ErrorSeries errs;
    auto sink = [&errs](const DiagRecord& rec, const mhd::SimState& st) {
      const double t = rec.t;
      errs.push(diagnostics::interpolant_error(
                    st.u, [t](double x, double y) { return mhd::ManufacturedSolution::u(x, y, t); }),
                diagnostics::interpolant_error(
                    st.B, [t](double x, double y) { return mhd::ManufacturedSolution::B(x, y, t); }));
    };
    ConvergenceRow& row = rows[static_cast<std::size_t>(i)];
    const std::string name = (temporal ? "steps" : "M") + std::to_string(rung);
    row.run = run_one(name, s, initial_data(cfg.initial), forcing, sink);
    row.tau = s.tau();
    row.h = std::sqrt(2.0) / s.mesh_cells;
    row.err_u = row.run.error.empty() ? errs.summary_u() : kNaN;
    row.err_B = row.run.error.empty() ? errs.summary_B() : kNaN;
  });
  std::sort(rows.begin(), rows.end(), [temporal](const auto& a, const auto& b) {
    return temporal ? a.tau > b.tau : a.h > b.h;
  });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& c = rows[i - 1];
    auto& f = rows[i];
    const double ratio = temporal ? c.tau / f.tau : c.h / f.h;
    auto order = [ratio](double ec, double ef) -> std::optional<double> {
      if (!(ec > 0.0) || !(ef > 0.0)) return std::nullopt;
      return std::log(ec / ef) / std::log(ratio);
    };
    f.order_u = order(c.err_u, f.err_u);
    f.order_B = order(c.err_B, f.err_B);
  }
  Csv csv(fs::path(out_dir) / "convergence.csv", "tau,h,err_u,order_u,err_B,order_B");
  std::vector<const RunResult*> runs;
  for (const auto& r : rows) {
    csv.row(r.tau, r.h, r.err_u, r.order_u, r.err_B, r.order_B);
    write_run(out_dir, r.run);
    runs.push_back(&r.run);
  }
  finish(out_dir, runs);
  return rows;
}

ClassicalLimitResult run_classical_limit(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(cfg, out_dir);
  const mhd::SolverConfig base = cfg.solver;
  const auto init = initial_data(cfg.initial);
  ClassicalLimitResult res;
  res.eps = cfg.eps;

  std::vector<fem::Field> ref_u;
  std::vector<fem::Field> ref_B;
  auto keep = [&](const DiagRecord&, const mhd::SimState& st) {
    ref_u.push_back(st.u);
    ref_B.push_back(st.B);
  };
  res.runs.push_back(run_one("classical", with_orders(base, "classical", "classical"), init, {}, keep));
  const RunResult& ref = res.runs.front();
  if (!ref.error.empty()) {
    write_run(out_dir, ref);
    finish(out_dir, {&ref});
  }

  // Per-level gaps to the classical run, written as each run finishes.
  std::vector<std::vector<diagnostics::GapPoint>> gaps(cfg.eps.size() + 1);
  std::vector<RunResult> runs(cfg.eps.size() + 1);
  const std::string delta = short_num(cfg.delta);
  parallel_for(static_cast<int>(runs.size()), cfg.workers, [&](int i) {
    const bool check = i == 0;
    const std::string spec = check ? "eps 0 " + delta : "eps " + short_num(cfg.eps[static_cast<std::size_t>(i - 1)]) + " " + delta;
    const std::string name = check ? "one-minus-delta" : "eps" + short_num(cfg.eps[static_cast<std::size_t>(i - 1)]);
    auto& g = gaps[static_cast<std::size_t>(i)];
    std::size_t level = 0;
    auto sink = [&](const DiagRecord&, const mhd::SimState& st) {
      // Same mesh, separate space objects: rebind the reference values.
      const fem::Field ru(st.u.space, ref_u[level].values);
      const fem::Field rB(st.B.space, ref_B[level].values);
      g.push_back(diagnostics::classical_gap(st.u, st.B, ru, rB));
      ++level;
    };
    runs[static_cast<std::size_t>(i)] = run_one(name, with_orders(base, spec, spec), init, {}, sink);
  });

  auto maxima = [](const std::vector<diagnostics::GapPoint>& g) {
    diagnostics::GapPoint m;
    for (const auto& p : g) {
      m.E_u = std::max(m.E_u, p.E_u);
      m.E_B = std::max(m.E_B, p.E_B);
      m.dK = std::max(m.dK, p.dK);
      m.dM = std::max(m.dM, p.dM);
    }
    return m;
  };
  Csv summary(fs::path(out_dir) / "classical_limit.csv", "eps,E_u,E_B,dK,dM");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const bool failed = !runs[i].error.empty();
    const auto m = maxima(gaps[i]);
    const double e = i == 0 ? 0.0 : cfg.eps[i - 1];
    {
      Csv per(fs::path(out_dir) / ("gaps_" + runs[i].name + ".csv"), "t,E_u,E_B,dK,dM");
      for (std::size_t k = 0; k < gaps[i].size(); ++k) {
        per.row(runs[i].records[k].t, gaps[i][k].E_u, gaps[i][k].E_B, gaps[i][k].dK, gaps[i][k].dM);
      }
    }
    if (i == 0) {
      res.check_u = failed ? kNaN : m.E_u;
      res.check_B = failed ? kNaN : m.E_B;
      continue;
    }
    res.E_u.push_back(failed ? kNaN : m.E_u);
    res.E_B.push_back(failed ? kNaN : m.E_B);
    res.dK.push_back(failed ? kNaN : m.dK);
    res.dM.push_back(failed ? kNaN : m.dM);
    summary.row(e, res.E_u.back(), res.E_B.back(), res.dK.back(), res.dM.back());
  }
  {
    Csv chk(fs::path(out_dir) / "reference_check.csv", "delta,E_u,E_B");
    chk.row(cfg.delta, res.check_u, res.check_B);
  }
  for (auto& r : runs) res.runs.push_back(std::move(r));
  std::vector<const RunResult*> all;
  for (const auto& r : res.runs) {
    write_run(out_dir, r);
    all.push_back(&r);
  }
  finish(out_dir, all);
  return res;
}

VortexResult run_vortex(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(cfg, out_dir);
  std::vector<std::string> names = cfg.cases;
  if (names.size() == 1 && names[0] == "all") names = vortex_case_names();
  std::vector<std::pair<std::string, std::string>> specs{{"classical", "classical"}};
  for (const auto& n : names) specs.push_back(vortex_case(n, cfg.solver.T));
  names.insert(names.begin(), "classical");

  VortexResult res;
  res.runs.resize(names.size());
  const auto init = initial_data(cfg.initial);
  parallel_for(static_cast<int>(names.size()), cfg.workers, [&](int i) {
    const auto& [a, b] = specs[static_cast<std::size_t>(i)];
    res.runs[static_cast<std::size_t>(i)] =
        run_one(names[static_cast<std::size_t>(i)], with_orders(cfg.solver, a, b), init);
  });
  Csv csv(fs::path(out_dir) / "deltas.csv", "case,dK,dM,dZ,dJ");
  std::vector<const RunResult*> all;
  for (const auto& r : res.runs) {
    res.deltas.push_back(deviations(r, res.runs.front(), cfg.solver.tau()));
    const auto& d = res.deltas.back();
    csv.row(r.name, d[0], d[1], d[2], d[3]);
    write_run(out_dir, r);
    all.push_back(&r);
  }
  finish(out_dir, all);
  return res;
}

std::vector<SweepRow> run_stabilization_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(cfg, out_dir);
  auto points = cfg.sweep_points;
  std::size_t ref_index = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] == cfg.sweep_reference) ref_index = i;
  }
  if (ref_index == points.size()) points.push_back(cfg.sweep_reference);

  std::vector<SweepRow> rows(points.size());
  const auto init = initial_data(cfg.initial);
  parallel_for(static_cast<int>(points.size()), cfg.workers, [&](int i) {
    SweepRow& row = rows[static_cast<std::size_t>(i)];
    std::tie(row.zeta, row.chi) = points[static_cast<std::size_t>(i)];
    mhd::SolverConfig s = resolve_solver(cfg);
    s.zeta = row.zeta;
    s.chi = row.chi;
    row.run = run_one("z" + short_num(row.zeta) + "_c" + short_num(row.chi), s, init);
    row.max_div_u = max_of(row.run.records, &DiagRecord::div_u);
    row.max_div_B = max_of(row.run.records, &DiagRecord::div_B_pre);
  });
  const RunResult& ref = rows[ref_index].run;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i != ref_index) rows[i].d = deviations(rows[i].run, ref, cfg.solver.tau());
  }
  Csv csv(fs::path(out_dir) / "sweep.csv", "zeta,chi,max_div_u,max_div_B,dK,dM,dZ,dJ");
  std::vector<const RunResult*> all;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    write_run(out_dir, r.run);
    all.push_back(&r.run);
    // The reference row is only reported when it was requested.
    if (i >= cfg.sweep_points.size()) continue;
    auto d = [&r](int m) -> std::optional<double> {
      if (!r.d) return std::nullopt;
      return (*r.d)[static_cast<std::size_t>(m)];
    };
    csv.row(r.zeta, r.chi, r.max_div_u, r.max_div_B, d(0), d(1), d(2), d(3));
  }
  finish(out_dir, all);
  rows.resize(cfg.sweep_points.size());
  return rows;
}

std::vector<ReynoldsRow> run_reynolds_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(cfg, out_dir);
  std::vector<ReynoldsRow> rows(cfg.reynolds.size());
  const auto init = initial_data(cfg.initial);
  const double tau = cfg.solver.tau();
  parallel_for(static_cast<int>(rows.size()), cfg.workers, [&](int i) {
    ReynoldsRow& row = rows[static_cast<std::size_t>(i)];
    row.Re = cfg.reynolds[static_cast<std::size_t>(i)];
    mhd::SolverConfig s = resolve_solver(cfg);
    s.Re = s.Rm = row.Re;
    row.run = run_one("Re" + short_num(row.Re), s, init);
    for (int m = 0; m < 4; ++m) {
      row.I[static_cast<std::size_t>(m)] =
          diagnostics::trapezoid(column(row.run.records, static_cast<diagnostics::Measure>(m)), tau);
    }
  });
  Csv csv(fs::path(out_dir) / "reynolds.csv", "Re,IK,IM,IZ,IJ,max_div_u,max_div_B");
  std::vector<const RunResult*> all;
  for (const auto& r : rows) {
    csv.row(r.Re, r.I[0], r.I[1], r.I[2], r.I[3], max_of(r.run.records, &DiagRecord::div_u),
            max_of(r.run.records, &DiagRecord::div_B_post));
    write_run(out_dir, r.run);
    all.push_back(&r.run);
  }
  finish(out_dir, all);
  return rows;
}

PhaseResult run_phase_map(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(cfg, out_dir);
  const int g = cfg.phase_grid;
  auto node = [&](int k) {
    return g == 1 ? cfg.phase_lo : cfg.phase_lo + (cfg.phase_hi - cfg.phase_lo) * k / (g - 1);
  };
  const auto init = initial_data(cfg.initial);
  PhaseResult res;
  res.rows.resize(static_cast<std::size_t>(g * g));
  // Index 0 is the classical reference; the rest are grid points.
  parallel_for(g * g + 1, cfg.workers, [&](int i) {
    if (i == 0) {
      res.reference = run_one("classical", with_orders(cfg.solver, "classical", "classical"), init);
      return;
    }
    PhaseRow& row = res.rows[static_cast<std::size_t>(i - 1)];
    row.alpha0 = node((i - 1) / g);
    row.alphaT = node((i - 1) % g);
    const std::string spec = "ramp " + num(row.alpha0) + " " + num(row.alphaT);
    row.run = run_one("a" + short_num(row.alpha0) + "_" + short_num(row.alphaT),
                      with_orders(cfg.solver, spec, spec), init);
  });
  Csv csv(fs::path(out_dir) / "phase.csv", "alpha0,alphaT,IK,IM,IZ,IJ,dIK,dIM,dIZ,dIJ");
  std::vector<const RunResult*> all{&res.reference};
  write_run(out_dir, res.reference);
  for (auto& r : res.rows) {
    if (r.run.error.empty() && res.reference.error.empty()) {
      r.dev = diagnostics::phase_deviation(r.run.records, res.reference.records, cfg.solver.tau());
    } else {
      r.dev.I.fill(kNaN);
      r.dev.dI.fill(kNaN);
    }
    const auto& I = r.dev.I;
    const auto& d = r.dev.dI;
    csv.row(r.alpha0, r.alphaT, I[0], I[1], I[2], I[3], d[0], d[1], d[2], d[3]);
    write_run(out_dir, r.run);
    all.push_back(&r.run);
  }
  finish(out_dir, all);
  return res;
}

void run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
  switch (cfg.kind) {
    case Kind::KernelCheck: run_kernel_check(cfg, out_dir); return;
    case Kind::Convergence: run_convergence(cfg, out_dir); return;
    case Kind::ClassicalLimit: run_classical_limit(cfg, out_dir); return;
    case Kind::Vortex: run_vortex(cfg, out_dir); return;
    case Kind::StabilizationSweep: run_stabilization_sweep(cfg, out_dir); return;
    case Kind::ReynoldsSweep: run_reynolds_sweep(cfg, out_dir); return;
    case Kind::PhaseMap: run_phase_map(cfg, out_dir); return;
  }
}

}  // namespace fracmhd::experiments
