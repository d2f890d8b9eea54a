#pragma once

#include <string>
#include <vector>

#include "aqc/oscillator.hpp"
#include "aqc/splitting.hpp"

namespace aqc {

enum class Branch { Excited, Ground };
enum class Direction { Forward, Reverse };

struct BlockSpectrum {
  Eigen::VectorXd eigenvalues;
  ComplexMatrix eigenvectors;
};

BlockSpectrum diagonalize(const OperatorMatrix& h);

struct Propagator {
  ComplexMatrix U_e;
  ComplexMatrix U_g;
  double t = 0.0;
};

// Eigendecomposition of both blocks, done once and reused for every time,
// state and Gibbs factor. Immutable after construction.
class BranchDynamics {
public:
  explicit BranchDynamics(JointHamiltonian joint);

  const JointHamiltonian& joint() const { return joint_; }
  const FockSpace& space() const { return joint_.space; }
  const BlockSpectrum& spectrum(Branch b) const { return b == Branch::Excited ? excited_ : ground_; }

  ComplexMatrix unitary(Branch b, double t) const;
  Propagator propagator(double t) const;
  ComplexVector evolve(Branch b, const ComplexVector& psi, double t) const;
  cplx amplitude(Branch b, const ComplexVector& measured, const ComplexVector& prepared, double t) const;
  // e^{-H_b / 2kT} psi
  ComplexVector gibbs_apply(Branch b, const ComplexVector& psi, double kT) const;
  double expectation(Branch b, const ComplexVector& psi) const;

private:
  JointHamiltonian joint_;
  BlockSpectrum excited_;
  BlockSpectrum ground_;
};

Propagator build_propagator(const JointHamiltonian& joint, double t);

struct ThermalWeights {
  double p_e;
  double p_g;
};

// Gibbs weights of E sigma_z: p_e = e^{-E/kT} / (2 cosh(E/kT)).
ThermalWeights thermal_weights(double E, double kT);

double default_tau(const FockSpace& space);

struct ProtocolConfig {
  FockSpace space;
  SplittingProfile profile;
  double tau;
  Direction direction;
  StateSpec prepared;
  StateSpec measured;
};

struct ProtocolResult {
  double probability;
  cplx branch_e_amp;
  cplx branch_g_amp;
  ThermalWeights weights;
  Direction direction;
  double tau;
  BatteryState prepared;
  BatteryState measured;
  std::vector<std::string> warnings;
};

ProtocolResult run_protocol(const ProtocolConfig& config);
ProtocolResult run_protocol(const BranchDynamics& dyn, Direction direction, const BatteryState& prepared,
                            const BatteryState& measured, double tau);

struct BranchStates {
  BatteryState branch_e;
  BatteryState branch_g;
  ThermalWeights weights;
};

BranchStates joint_final_state(const ProtocolConfig& config);
BranchStates joint_final_state(const BranchDynamics& dyn, Direction direction, const BatteryState& prepared,
                               double tau);

}  // namespace aqc
