#include "fracmhd/mhd/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracmhd/errors.hpp"
#include "fracmhd/fem/assembly.hpp"
#include "fracmhd/fem/integrate.hpp"

namespace fracmhd::mhd {

using diagnostics::DiagRecord;

namespace {

fem::Field initial_field(const std::shared_ptr<const fem::FeSpace>& space, const fem::VectorFunction& f) {
  fem::Field out = f ? fem::interpolate(space, f) : fem::Field(space);
  // Homogeneous boundary values are imposed exactly.
  for (int node = 0; node < space->num_nodes(); ++node) {
    if (!space->is_fixed(node)) continue;
    for (int c = 0; c < 2; ++c) out.values[c * space->num_nodes() + node] = 0.0;
  }
  return out;
}

Eigen::VectorXd load(const FemContext& ctx, const SpaceTimeFunction& f, double t) {
  if (!f) return Eigen::VectorXd::Zero(ctx.vel->size());
  return fem::assemble_load(*ctx.vel, [&f, t](double x, double y) { return f(x, y, t); });
}

}  // namespace

Simulation::Simulation(SolverConfig config, const InitialData& init, Forcing forcing)
    : config_(std::move(config)), forcing_(std::move(forcing)), solver_(config_.linear) {
  config_.validate();
  grid_ = config_.grid();
  ctx_ = FemContext::build(config_.mesh_cells, config_.bc);
  state_.level = 0;
  state_.u = initial_field(ctx_->vel, init.u0);
  state_.B = initial_field(ctx_->vel, init.B0);
  state_.p = fem::Field(ctx_->pres);
  state_.u_history.push_back(state_.u.values);
  state_.B_history.push_back(state_.B.values);
  setup();
}

Simulation::Simulation(SolverConfig config, SimState state, Forcing forcing)
    : config_(std::move(config)), forcing_(std::move(forcing)), solver_(config_.linear) {
  config_.validate();
  grid_ = config_.grid();
  ctx_ = FemContext::build(config_.mesh_cells, config_.bc);
  const auto n = static_cast<std::size_t>(state.level) + 1;
  if (state.level < 0 || state.level > config_.steps || state.u_history.size() != n ||
      state.B_history.size() != n) {
    throw ConfigError("resume: history length does not match the level");
  }
  for (const auto* hist : {&state.u_history, &state.B_history}) {
    for (const auto& h : *hist) {
      if (h.size() != ctx_->vel->size()) throw ConfigError("resume: field size does not match the mesh");
    }
  }
  if (state.u.values.size() != ctx_->vel->size() || state.B.values.size() != ctx_->vel->size() ||
      state.p.values.size() != ctx_->pres->size()) {
    throw ConfigError("resume: field size does not match the mesh");
  }
  state_.level = state.level;
  state_.u = fem::Field(ctx_->vel, std::move(state.u.values));
  state_.B = fem::Field(ctx_->vel, std::move(state.B.values));
  state_.p = fem::Field(ctx_->pres, std::move(state.p.values));
  state_.u_history = std::move(state.u_history);
  state_.B_history = std::move(state.B_history);
  setup();
}

void Simulation::setup() {
  if (config_.classical) {
    alpha_table_ = std::make_unique<KernelTable>(KernelTable::classical(grid_));
    beta_table_ = std::make_unique<KernelTable>(KernelTable::classical(grid_));
  } else {
    alpha_table_ = std::make_unique<KernelTable>(grid_, *config_.alpha);
    beta_table_ = std::make_unique<KernelTable>(grid_, *config_.beta);
  }
  system_ = std::make_unique<MonolithicSystem>(ctx_);
  system_->set_parameters(1.0 / config_.Re, 1.0 / config_.Rm, config_.zeta, config_.chi);
  if (config_.cleaning) cleaner_ = std::make_unique<DivergenceCleaner>(ctx_);
  u_tracker_ = std::make_unique<CorrectedEnergyTracker>(*alpha_table_);
  B_tracker_ = std::make_unique<CorrectedEnergyTracker>(*beta_table_);
  for (std::size_t k = 0; k < state_.u_history.size(); ++k) {
    const auto& u = state_.u_history[k];
    const auto& B = state_.B_history[k];
    u_sq_.push_back(u.dot(ctx_->mass * u));
    B_sq_.push_back(B.dot(ctx_->mass * B));
    u_tracker_->push(u_sq_.back());
    B_tracker_->push(B_sq_.back());
  }
}

Eigen::VectorXd Simulation::history_sum(const std::vector<Eigen::VectorXd>& hist,
                                        const KernelRow& row) const {
  const std::vector<double> w = history_weights(row);
  const Eigen::Index len = hist.front().size();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(len);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(len);
  double* sp = s.data();
  double* cp = c.data();
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double wk = w[k];
    if (wk == 0.0) continue;
    const double* h = hist[k].data();
    for (Eigen::Index i = 0; i < len; ++i) {
      const double y = wk * h[i] - cp[i];
      const double t = sp[i] + y;
      cp[i] = (t - sp[i]) - y;
      sp[i] = t;
    }
  }
  return s;
}

double Simulation::check_inequalities(const KernelRow& row, const Eigen::VectorXd& phi,
                                      const Eigen::VectorXd& hsum, CorrectedEnergyTracker& tracker,
                                      std::vector<double>& q, const char* name) {
  const Eigen::VectorXd Mphi = ctx_->mass * phi;
  const Eigen::VectorXd d = (row.b(row.n) * phi - hsum) / row.tau;
  const double inner = d.dot(Mphi);
  q.push_back(phi.dot(Mphi));
  tracker.push(q.back());
  if (!config_.check_inequalities) return 0.0;
  const InequalityCheck quad = quadratic_form_values(row, inner, q);
  const InequalityCheck corrected = corrected_energy_step(tracker, row, inner);
  for (const auto* c : {&quad, &corrected}) {
    if (!c->holds()) {
      std::ostringstream os;
      os << "level " << row.n << ": " << (c == &quad ? "quadratic-form" : "corrected-energy")
         << " inequality violated for " << name << " (relative violation " << c->violation() << ")";
      throw NumericError(os.str());
    }
  }
  return std::max(quad.violation(), corrected.violation());
}

StepReport Simulation::step() {
  if (finished()) throw UsageError("Simulation::step: final level reached");
  const int n = state_.level + 1;
  StepReport rep;
  rep.level = n;
  try {
    const KernelRow& ra = alpha_table_->row(n);
    const KernelRow& rb = beta_table_->row(n);
    const double tau = grid_.tau;
    const double t = grid_.t(n);
    const Eigen::VectorXd Hu = history_sum(state_.u_history, ra);
    const Eigen::VectorXd HB = history_sum(state_.B_history, rb);
    const Eigen::VectorXd fu = load(*ctx_, forcing_.f, t) + ctx_->mass * Hu / tau;
    const Eigen::VectorXd fB = load(*ctx_, forcing_.g, t) + ctx_->mass * HB / tau;
    const Eigen::VectorXd b = system_->gather(fu, Eigen::VectorXd::Zero(ctx_->pres->size()), fB);
    const double cu = ra.b(n) / tau;
    const double cB = rb.b(n) / tau;

    Eigen::VectorXd x = system_->gather(state_.u.values, state_.p.values, state_.B.values, multiplier_);
    Eigen::VectorXd uw;
    Eigen::VectorXd pw;
    Eigen::VectorXd Bw;
    bool converged = false;
    for (int it = 1; it <= config_.picard_max; ++it) {
      system_->scatter(x, uw, pw, Bw);
      system_->assemble(cu, cB, uw, Bw);
      const auto& A = system_->matrix();
      const Eigen::VectorXd r = b - A * x;
      const Eigen::VectorXd dx = solver_.solve(A, r);
      x += dx;
      rep.picard_iterations = it;
      // Scaled by the iterate: the absolute norm has a roundoff floor near
      // 1e-9 on fine meshes.
      rep.increment_norm = system_->field_norm(dx) / std::max(1.0, system_->field_norm(x));
      rep.linear_residual = std::max(rep.linear_residual, solver_.stats().residual);
      rep.krylov_iterations += solver_.stats().iterations;
      if (rep.increment_norm <= config_.picard_tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream os;
      os << "Picard iteration did not converge at level " << n << " after " << config_.picard_max
         << " iterations (increment " << rep.increment_norm << ")";
      throw SolverError(os.str(), rep.increment_norm, n);
    }
    system_->scatter(x, state_.u.values, state_.p.values, state_.B.values);
    multiplier_ = x[x.size() - 1];

    rep.div_B_pre = std::sqrt(fem::integrate_quantity(fem::Quantity::SqDiv, state_.B));
    if (cleaner_) state_.B = cleaner_->clean(state_.B);
    rep.div_B_post = std::sqrt(fem::integrate_quantity(fem::Quantity::SqDiv, state_.B));

    const double vu = check_inequalities(ra, state_.u.values, Hu, *u_tracker_, u_sq_, "u");
    const double vb = check_inequalities(rb, state_.B.values, HB, *B_tracker_, B_sq_, "B");
    rep.worst_violation = std::max(vu, vb);
  } catch (const SolverError& e) {
    if (e.level() >= 0) throw;
    std::ostringstream os;
    os << "level " << n << ": " << e.what();
    throw SolverError(os.str(), e.achieved(), n);
  }
  state_.u_history.push_back(state_.u.values);
  state_.B_history.push_back(state_.B.values);
  state_.level = n;
  return rep;
}

DiagRecord Simulation::record(const StepReport* report) const {
  DiagRecord r = diagnostics::energy_report(state_.u, state_.B, time());
  if (report) {
    r.div_B_pre = report->div_B_pre;
    r.picard_iters = report->picard_iterations;
  }
  return r;
}

std::vector<DiagRecord> run_simulation(const SolverConfig& config, const InitialData& init,
                                       const Forcing& forcing, const DiagSink& sink) {
  Simulation sim(config, init, forcing);
  std::vector<DiagRecord> out;
  out.reserve(static_cast<std::size_t>(config.steps) + 1);
  out.push_back(sim.record());
  if (sink) sink(out.back(), sim.state());
  while (!sim.finished()) {
    const StepReport rep = sim.step();
    out.push_back(sim.record(&rep));
    if (sink) sink(out.back(), sim.state());
  }
  return out;
}

}  // namespace fracmhd::mhd
