#include "aqc/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "aqc/error.hpp"

namespace aqc {

namespace {

double end_value(const SplittingProfile& profile, Direction d) {
  auto [ei, ef] = profile_end_values(profile);
  return d == Direction::Forward ? ei : ef;
}

ComplexVector phases(const Eigen::VectorXd& lambda, double t) {
  ComplexVector ph(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) ph[k] = std::polar(1.0, -lambda[k] * t);
  return ph;
}

}  // namespace

BlockSpectrum diagonalize(const OperatorMatrix& h) {
  if (!h.hermitian) throw std::invalid_argument("diagonalize needs a hermitian operator");
  const auto& m = h.entries;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
    if (es.info() != Eigen::Success) throw Error(ErrorCode::EigensolverFailure, "real block eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors().cast<cplx>()};
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigensolverFailure, "complex block eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

BranchDynamics::BranchDynamics(JointHamiltonian joint)
    : joint_(std::move(joint)), excited_(diagonalize(joint_.H_e)), ground_(diagonalize(joint_.H_g)) {}

ComplexMatrix BranchDynamics::unitary(Branch b, double t) const {
  const auto& s = spectrum(b);
  return s.eigenvectors * phases(s.eigenvalues, t).asDiagonal() * s.eigenvectors.adjoint();
}

Propagator BranchDynamics::propagator(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorCode::ConfigInvalid, "propagation time must be >= 0");
  return {unitary(Branch::Excited, t), unitary(Branch::Ground, t), t};
}

ComplexVector BranchDynamics::evolve(Branch b, const ComplexVector& psi, double t) const {
  const auto& s = spectrum(b);
  ComplexVector c = s.eigenvectors.adjoint() * psi;
  return s.eigenvectors * (phases(s.eigenvalues, t).array() * c.array()).matrix();
}

cplx BranchDynamics::amplitude(Branch b, const ComplexVector& measured, const ComplexVector& prepared,
                               double t) const {
  const auto& s = spectrum(b);
  ComplexVector cm = s.eigenvectors.adjoint() * measured;
  ComplexVector cp = s.eigenvectors.adjoint() * prepared;
  return cm.dot((phases(s.eigenvalues, t).array() * cp.array()).matrix());
}

ComplexVector BranchDynamics::gibbs_apply(Branch b, const ComplexVector& psi, double kT) const {
  const auto& s = spectrum(b);
  ComplexVector c = s.eigenvectors.adjoint() * psi;
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::exp(-s.eigenvalues[k] / (2.0 * kT));
  return s.eigenvectors * c;
}

double BranchDynamics::expectation(Branch b, const ComplexVector& psi) const {
  const auto& s = spectrum(b);
  ComplexVector c = s.eigenvectors.adjoint() * psi;
  return (c.cwiseAbs2().array() * s.eigenvalues.array()).sum() / c.squaredNorm();
}

Propagator build_propagator(const JointHamiltonian& joint, double t) { return BranchDynamics(joint).propagator(t); }

ThermalWeights thermal_weights(double E, double kT) {
  double x = 2.0 * E / kT;
  return {1.0 / (1.0 + std::exp(x)), 1.0 / (1.0 + std::exp(-x))};
}

double default_tau(const FockSpace& space) { return std::numbers::pi / space.omega(); }

ProtocolResult run_protocol(const BranchDynamics& dyn, Direction direction, const BatteryState& prepared,
                            const BatteryState& measured, double tau) {
  if (!(tau >= 0.0)) throw Error(ErrorCode::ConfigInvalid, "tau must be >= 0");
  for (const auto* s : {&prepared, &measured}) {
    if (!(s->norm_deficit < kNormDeficitLimit))
      throw Error(ErrorCode::TruncationInsufficient, "state norm deficit exceeds 1e-8");
  }
  const auto& joint = dyn.joint();
  ThermalWeights w = thermal_weights(end_value(joint.profile, direction), joint.space.kT());
  cplx ae = dyn.amplitude(Branch::Excited, measured.amplitudes, prepared.amplitudes, tau);
  cplx ag = dyn.amplitude(Branch::Ground, measured.amplitudes, prepared.amplitudes, tau);
  ProtocolResult r{w.p_e * std::norm(ae) + w.p_g * std::norm(ag), ae, ag, w, direction, tau, prepared, measured, {}};

  if (direction == Direction::Forward) {
    auto x_i = std::visit([](const auto& p) -> std::optional<double> {
      if constexpr (requires { p.x_i; }) return p.x_i;
      else return std::nullopt;
    }, joint.profile);
    double mean_x = mean_displacement(prepared).real();
    if (x_i && !(mean_x < *x_i)) {
      std::ostringstream msg;
      msg << "prepared state <X> = " << mean_x << " not left of x_i = " << *x_i;
      r.warnings.push_back(msg.str());
    }
  }
  return r;
}

ProtocolResult run_protocol(const ProtocolConfig& config) {
  BranchDynamics dyn(joint_hamiltonian(config.space, config.profile));
  return run_protocol(dyn, config.direction, prepare_state(config.space, config.prepared),
                      prepare_state(config.space, config.measured), config.tau);
}

BranchStates joint_final_state(const BranchDynamics& dyn, Direction direction, const BatteryState& prepared,
                               double tau) {
  if (!(tau >= 0.0)) throw Error(ErrorCode::ConfigInvalid, "tau must be >= 0");
  if (!(prepared.norm_deficit < kNormDeficitLimit))
    throw Error(ErrorCode::TruncationInsufficient, "state norm deficit exceeds 1e-8");
  ThermalWeights w = thermal_weights(end_value(dyn.joint().profile, direction), dyn.space().kT());
  return {{dyn.evolve(Branch::Excited, prepared.amplitudes, tau), std::nullopt, prepared.norm_deficit},
          {dyn.evolve(Branch::Ground, prepared.amplitudes, tau), std::nullopt, prepared.norm_deficit},
          w};
}

BranchStates joint_final_state(const ProtocolConfig& config) {
  BranchDynamics dyn(joint_hamiltonian(config.space, config.profile));
  return joint_final_state(dyn, config.direction, prepare_state(config.space, config.prepared), config.tau);
}

}  // namespace aqc
