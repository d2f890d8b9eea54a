#include "aqc/diagnostics.hpp"

#include <cmath>
#include <sstream>

#include "aqc/error.hpp"

namespace aqc {

namespace {

constexpr double kPairingTolerance = 1e-10;
constexpr double kTiny = 1e-300;

TwoLevelSystem system_of(const BranchDynamics& dyn) {
  auto [ei, ef] = profile_end_values(dyn.joint().profile);
  return {ei, ef, dyn.space().kT()};
}

}  // namespace

double rank_two_trace_norm(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("vector size mismatch");
  ComplexMatrix uv(u.size(), 2);
  uv.col(0) = u;
  uv.col(1) = v;
  Eigen::HouseholderQR<ComplexMatrix> qr(uv);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(u.size(), 2);
  Eigen::Vector2cd pu = q.adjoint() * u;
  Eigen::Vector2cd pv = q.adjoint() * v;
  Eigen::Matrix2cd b = pu * pu.adjoint() - pv * pv.adjoint();
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(b);
  return svd.singularValues().sum();
}

double factorisation_error(const BranchDynamics& dyn, const BatteryState& psi, double E) {
  const auto& space = dyn.space();
  const double kT = space.kT();
  ComplexVector hb_weighted = psi.amplitudes;
  const double chi = space.chi();
  for (Eigen::Index n = 0; n < hb_weighted.size(); ++n) hb_weighted[n] *= std::exp(-chi * (n + 0.5));
  if (hb_weighted.squaredNorm() < kTiny)
    throw Error(ErrorCode::UnderflowRisk, "exp(-H_B/2kT) psi underflows; chi or state energy too large");

  double total = 0.0;
  for (Branch b : {Branch::Excited, Branch::Ground}) {
    double sign = b == Branch::Excited ? 1.0 : -1.0;
    ComplexVector exact = dyn.gibbs_apply(b, psi.amplitudes, kT);
    ComplexVector product = std::exp(-sign * E / (2.0 * kT)) * hb_weighted;
    total += rank_two_trace_norm(exact, product);
  }
  return total;
}

FactorisationErrors factorisation_errors(const BranchDynamics& dyn, const BatteryState& psi_i,
                                         const BatteryState& phi_f, const TwoLevelSystem& sys) {
  return {factorisation_error(dyn, psi_i, sys.E_i), factorisation_error(dyn, phi_f, sys.E_f)};
}

double discrepancy_D(const FockSpace& space, const ProtocolResult& forward, const ProtocolResult& reverse,
                     double Z_tilde_psi_i, double Z_tilde_phi_f, const TwoLevelSystem& sys) {
  if (forward.direction != Direction::Forward || reverse.direction != Direction::Reverse)
    throw Error(ErrorCode::ConfigMismatch, "expected one forward and one reverse run");
  auto paired = [&](const BatteryState& prepared, const BatteryState& measured_other) {
    BatteryState expect = time_reverse(apply_gibbs_weight(space, measured_other).weighted);
    return fidelity(prepared, expect) > 1.0 - kPairingTolerance;
  };
  if (!paired(forward.prepared, reverse.measured))
    throw Error(ErrorCode::ConfigMismatch, "forward preparation is not T G(psi_i) of the reverse measurement");
  if (!paired(reverse.prepared, forward.measured))
    throw Error(ErrorCode::ConfigMismatch, "reverse preparation is not T G(phi_f) of the forward measurement");
  double zi = partition_function(sys.E_i, sys.kT);
  double zf = partition_function(sys.E_f, sys.kT);
  return std::abs(zi * Z_tilde_psi_i * forward.probability - zf * Z_tilde_phi_f * reverse.probability);
}

RatioResult ratio_R(const ProtocolResult& forward, const ProtocolResult& reverse, const CrooksPrediction& prediction,
                    double kT) {
  if (reverse.probability < kTiny)
    throw Error(ErrorCode::DegenerateRatio, "reverse probability below 1e-300");
  double r = forward.probability / reverse.probability *
             std::exp(-(prediction.delta_E_tilde - prediction.delta_F) / kT);
  return {r, 1.0 - r};
}

double infer_q(const ProtocolResult& forward, const ProtocolResult& reverse, double delta_F, double W_q, double kT) {
  if (W_q == 0.0) throw Error(ErrorCode::UndefinedQ, "W_q = 0");
  if (reverse.probability < kTiny || forward.probability < kTiny)
    throw Error(ErrorCode::DegenerateRatio, "transition probability below 1e-300");
  return kT / W_q * (std::log(forward.probability / reverse.probability) + delta_F / kT);
}

StateQuadruple make_quadruple(const FockSpace& space, const BatteryState& psi_i, const BatteryState& phi_f) {
  auto gi = apply_gibbs_weight(space, psi_i);
  auto gf = apply_gibbs_weight(space, phi_f);
  return {psi_i, phi_f, time_reverse(gi.weighted), time_reverse(gf.weighted), gi.Z_tilde, gf.Z_tilde};
}

AqcRun run_aqc(const BranchDynamics& dyn, const BatteryState& psi_i, const BatteryState& phi_f, double tau) {
  const auto& space = dyn.space();
  const TwoLevelSystem sys = system_of(dyn);
  StateQuadruple q = make_quadruple(space, psi_i, phi_f);

  ProtocolResult fwd = run_protocol(dyn, Direction::Forward, q.phi_i, q.phi_f, tau);
  ProtocolResult rev = run_protocol(dyn, Direction::Reverse, q.psi_f, q.psi_i, tau);

  const double kT = sys.kT;
  double dE = -kT * (std::log(q.Z_tilde_psi_i) - std::log(q.Z_tilde_phi_f));
  double e_phi_i = mean_energy(space, q.phi_i), e_phi_f = mean_energy(space, q.phi_f);
  double e_psi_i = mean_energy(space, q.psi_i), e_psi_f = mean_energy(space, q.psi_f);
  double w = 0.5 * ((e_phi_i - e_phi_f) - (e_psi_f - e_psi_i));
  double scale = std::max({e_phi_i, e_phi_f, e_psi_i, e_psi_f});
  CrooksPrediction pred = make_prediction(sys, dE, w, 1e-12 * scale);

  double D = discrepancy_D(space, fwd, rev, q.Z_tilde_psi_i, q.Z_tilde_phi_f, sys);
  FactorisationErrors eps = factorisation_errors(dyn, psi_i, phi_f, sys);
  RatioResult ratio = ratio_R(fwd, rev, pred, kT);
  ErrorReport report{D, eps.epsilon_i, eps.epsilon_f, eps.epsilon_i + eps.epsilon_f, ratio.R, ratio.one_minus_R};

  std::optional<double> qi;
  if (pred.q && fwd.probability >= kTiny) qi = infer_q(fwd, rev, pred.delta_F, *pred.W_q, kT);
  return {std::move(q), std::move(fwd), std::move(rev), pred, report, qi};
}

}  // namespace aqc
