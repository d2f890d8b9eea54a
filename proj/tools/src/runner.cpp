#include "aqc_cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "aqc/diagnostics.hpp"
#include "aqc/error.hpp"
#include "aqc/identities.hpp"
#include "aqc/predictions.hpp"

namespace aqc::cli {

namespace {

constexpr double kRelTol = 1e-8;
constexpr double kAbsTol = 1e-14;

Cell maybe(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

std::pair<BatteryState, BatteryState> state_pair(const FockSpace& space, const Point& p) {
  if (p.family == "squeezed")
    return {prepare_state(space, SqueezedDisplaced{p.alpha_i, p.r}), prepare_state(space, SqueezedDisplaced{p.alpha_f, p.r})};
  if (p.family == "symmetric_cat") {
    auto cat = prepare_state(space, symmetric_cat(p.alpha_f));
    return {cat, cat};
  }
  if (p.family == "one_sided_cat")
    return {prepare_state(space, one_sided_cat(p.alpha_i, -p.shift)), prepare_state(space, one_sided_cat(p.alpha_f, p.shift))};
  return {prepare_state(space, Coherent{p.alpha_i}), prepare_state(space, Coherent{p.alpha_f})};
}

AqcRun aqc_run(const Point& p, const SplittingProfile& profile) {
  FockSpace space = p.space();
  BranchDynamics dyn(joint_hamiltonian(space, profile, p.method));
  auto [psi_i, phi_f] = state_pair(space, p);
  return run_aqc(dyn, psi_i, phi_f, p.tau_or_default());
}

void append_warnings(ResultRecord& rec, const AqcRun& run) {
  for (const auto* w : {&run.forward.warnings, &run.reverse.warnings})
    for (const auto& s : *w) rec.warnings.push_back(s);
}

void eval_aqc(const Point& p, ResultRecord& rec) {
  AqcRun run = aqc_run(p, p.profile);
  const auto& e = run.errors;
  const auto& pr = run.prediction;
  rec.values = {{"P_fwd", run.forward.probability},
                {"P_rev", run.reverse.probability},
                {"D", e.D},
                {"epsilon_i", e.epsilon_i},
                {"epsilon_f", e.epsilon_f},
                {"epsilon", e.epsilon},
                {"R", e.R},
                {"one_minus_R", e.one_minus_R},
                {"delta_F", pr.delta_F},
                {"delta_E_tilde", pr.delta_E_tilde},
                {"predicted_ratio", pr.predicted_ratio},
                {"W_q", maybe(pr.W_q)},
                {"q_predicted", maybe(pr.q)},
                {"q_inferred", maybe(run.q_inferred)}};
  if (!e.bound_holds()) rec.warnings.push_back("D exceeds epsilon");
  append_warnings(rec, run);
}

void eval_q_profiles(const Point& p, ResultRecord& rec) {
  for (const auto& [name, profile] : p.profiles) {
    AqcRun run = aqc_run(p, profile);
    rec.values.emplace_back("q_" + name, maybe(run.q_inferred));
    append_warnings(rec, run);
  }
  rec.values.emplace_back("q_analytic", q_factor(p.chi()));
}

std::string r_label(double r) {
  std::string s = json(r).dump();
  if (s.size() > 2 && s.ends_with(".0")) s.resize(s.size() - 2);
  return s;
}

void eval_squeezed_q(const Point& p, ResultRecord& rec) {
  const double chi = p.chi();
  const cplx i(0.0, 1.0);
  for (const char* axis : {"position", "momentum"}) {
    const bool mom = std::string(axis) == "momentum";
    cplx ai = mom ? i * p.alpha_i : p.alpha_i;
    cplx af = mom ? i * p.alpha_f : p.alpha_f;
    for (double r : p.r_values) {
      double dE = squeezed_delta_E(ai, af, r, chi, p.kT);
      double w = squeezed_quantum_work(ai, af, r, chi, p.hbar_omega);
      double scale = p.hbar_omega * std::max({std::norm(ai), std::norm(af), 1.0});
      Cell q = std::abs(w) > 1e-12 * scale ? Cell(dE / w) : Cell(std::monostate{});
      rec.values.emplace_back(std::string("q_") + axis + "_r" + r_label(r), q);
    }
  }
  rec.values.emplace_back("q_analytic", q_factor(chi));
}

void eval_thermal_split(const Point& p, ResultRecord& rec) {
  auto t = thermal_frequency_split(p.space());
  rec.values = {{"hbar_omega_T", t.hbar_omega_T}, {"thermal_part", t.thermal_part}, {"vacuum_part", t.vacuum_part}};
}

void eval_identities(const Point& p, ResultRecord& rec) {
  IdentityReport r = identity_oracle(p.dim, p.m, p.n);
  for (int k = 0; k < 6; ++k) rec.values.emplace_back("identity_" + std::to_string(k + 1), r.residual[k]);
  rec.values.emplace_back("max_residual", r.max_residual());
}

void eval_etilde(const Point& p, ResultRecord& rec) {
  FockSpace space = p.space();
  const cplx alpha = p.alpha_f;
  BatteryState st = prepare_state(space, Coherent{alpha});
  const double et = effective_potential(space, st);
  const double closed = -p.kT * std::log(coherent_Z_tilde(alpha, p.chi()));
  const double mean = mean_energy(space, st);
  Eigen::VectorXd e = oscillator_energies(space);

  const double delta = 0.37 * p.hbar_omega, lambda = 2.5;
  double shifted = effective_potential(Eigen::VectorXd(e.array() + delta), p.kT, st.amplitudes);
  double scaled = effective_potential(Eigen::VectorXd(lambda * e), lambda * p.kT, st.amplitudes);
  int level = std::min(int(std::lround(std::norm(alpha))), p.dim - 1);
  double eigen = effective_potential(space, prepare_state(space, FockLevel{level}));
  double exact = p.hbar_omega * (level + 0.5);
  FockSpace hot = space.with_kT(p.hbar_omega / 2e-6);
  double hot_gap = std::abs(effective_potential(hot, st) - mean_energy(hot, st)) / p.hbar_omega;
  BatteryState rotated{st.amplitudes * std::polar(1.0, 0.77), std::nullopt, st.norm_deficit};
  double phase = effective_potential(space, rotated);

  rec.values = {{"E_tilde", et},
                {"E_tilde_closed_form", closed},
                {"mean_energy", mean},
                {"shift_residual", std::abs(shifted - (et + delta)) / std::abs(et + delta)},
                {"scale_residual", std::abs(scaled - lambda * et) / std::abs(lambda * et)},
                {"eigenstate_residual", std::abs(eigen - exact) / exact},
                {"high_T_gap", hot_gap},
                {"phase_residual", std::abs(phase - et) / std::abs(et)},
                {"bound_gap", mean - et}};
}

std::vector<std::string> tracked_fields(Kind kind, const ResultRecord& rec) {
  std::vector<std::string> out;
  if (kind == Kind::Aqc) return {"P_fwd", "P_rev"};
  if (kind == Kind::QProfiles)
    for (const auto& [k, v] : rec.values)
      if (k != "q_analytic") out.push_back(k);
  return out;
}

void evaluate_into(const ExperimentConfig& config, const Point& p, ResultRecord& rec) {
  switch (config.kind) {
    case Kind::Aqc: eval_aqc(p, rec); break;
    case Kind::QProfiles: eval_q_profiles(p, rec); break;
    case Kind::SqueezedQ: eval_squeezed_q(p, rec); break;
    case Kind::ThermalSplit: eval_thermal_split(p, rec); break;
    case Kind::Identities: eval_identities(p, rec); break;
    case Kind::ETilde: eval_etilde(p, rec); break;
    case Kind::Wigner: throw Error(ErrorCode::ConfigInvalid, "wigner runs produce a grid, not records");
  }
}

WignerResult run_wigner(const Point& p) {
  FockSpace space = p.space();
  BranchDynamics dyn(joint_hamiltonian(space, p.profile, p.method));
  BatteryState prepared = prepare_state(space, Coherent{p.alpha_i});
  BranchStates br = joint_final_state(dyn, Direction::Forward, prepared, p.tau_or_default());
  BatteryState branch = p.branch == "excited" ? br.branch_e : br.branch_g;
  BatteryState target = p.state == "prepared"                 ? prepared
                        : p.state == "coherent_approximation" ? coherent_approximation(space, branch)
                                                              : branch;
  GridSpec grid = p.grid ? *p.grid : GridSpec::fitted(target, p.points);
  WignerResult out{wigner_of_state(space, target, grid), json::object()};
  cplx mean = mean_displacement(target);
  out.summary = {{"min_value", out.grid.min_value},
                 {"negativity_volume", negativity_volume(out.grid)},
                 {"grid_integral", grid_integral(out.grid)},
                 {"mean_alpha", {mean.real(), mean.imag()}},
                 {"mean_energy", mean_energy(space, target)},
                 {"p_e", br.weights.p_e},
                 {"p_g", br.weights.p_g}};
  return out;
}

}  // namespace

const Cell* ResultRecord::find(const std::string& name) const {
  for (const auto& [k, v] : values)
    if (k == name) return &v;
  return nullptr;
}

int worker_count() {
  int hw = int(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("AQC_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw Error(ErrorCode::ConfigInvalid, std::string("AQC_WORKERS must be a positive integer, got '") + env + "'");
    return int(std::min<long>(v, hw));
  }
  return hw;
}

ResultRecord evaluate_point(const ExperimentConfig& config, const Point& point) {
  auto t0 = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.index = point.index;
  rec.swept = point.swept;
  evaluate_into(config, point, rec);

  if (config.dim_doubling) {
    auto names = tracked_fields(config.kind, rec);
    if (names.empty()) {
      rec.warnings.push_back("no truncation-dependent fields; convergence check skipped");
    } else {
      Point doubled = point;
      doubled.dim *= 2;
      ResultRecord big;
      evaluate_into(config, doubled, big);
      Convergence c{doubled.dim, 0.0, true};
      for (const auto& n : names) {
        const Cell* a = rec.find(n);
        const Cell* b = big.find(n);
        if (!a || !b || a->index() != b->index()) {
          c.converged = false;
          continue;
        }
        if (!std::holds_alternative<double>(*a)) continue;
        double x = std::get<double>(*a), y = std::get<double>(*b);
        double d = std::abs(x - y);
        c.delta = std::max(c.delta, d);
        if (d > kRelTol * std::abs(y) + kAbsTol) c.converged = false;
      }
      if (!c.converged) rec.warnings.push_back("not converged under dimension doubling");
      rec.convergence = c;
    }
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
  ExperimentResult out{config, {}, std::nullopt};
  if (config.kind == Kind::Wigner) {
    out.wigner = run_wigner(resolve_point(config, 0));
    return out;
  }
  const std::size_t total = point_count(config);
  std::vector<ResultRecord> records(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        records[i] = evaluate_point(config, resolve_point(config, i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, int(total)));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  // report the first failing point regardless of scheduling
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  out.records = std::move(records);
  return out;
}

}  // namespace aqc::cli
