#pragma once

#include <optional>

#include "aqc/dynamics.hpp"
#include "aqc/predictions.hpp"

namespace aqc {

struct ErrorReport {
  double D;
  double epsilon_i;
  double epsilon_f;
  double epsilon;
  double R;
  double one_minus_R;

  bool bound_holds(double slack = 1e-10) const { return D <= epsilon + slack; }
};

// Trace norm of |u><u| - |v><v|, from the singular values of its
// restriction to span{u, v}.
double rank_two_trace_norm(const ComplexVector& u, const ComplexVector& v);

// || J_{H_SB}(1 x psi) - J_{K}(1 x psi) ||_1 with K = E sigma_z + H_B, summed over both blocks.
double factorisation_error(const BranchDynamics& dyn, const BatteryState& psi, double E);

struct FactorisationErrors {
  double epsilon_i;
  double epsilon_f;
};

FactorisationErrors factorisation_errors(const BranchDynamics& dyn, const BatteryState& psi_i,
                                         const BatteryState& phi_f, const TwoLevelSystem& sys);

// |Z_i Z~(psi_i) P_fwd - Z_f Z~(phi_f) P_rev|. Throws ConfigMismatch unless the
// forward and reverse runs use the paired states of the equality.
double discrepancy_D(const FockSpace& space, const ProtocolResult& forward, const ProtocolResult& reverse,
                     double Z_tilde_psi_i, double Z_tilde_phi_f, const TwoLevelSystem& sys);

struct RatioResult {
  double R;
  double one_minus_R;
};

RatioResult ratio_R(const ProtocolResult& forward, const ProtocolResult& reverse, const CrooksPrediction& prediction,
                    double kT);

double infer_q(const ProtocolResult& forward, const ProtocolResult& reverse, double delta_F, double W_q, double kT);

// psi_i, phi_f are the measured states; phi_i, psi_f the prepared ones.
struct StateQuadruple {
  BatteryState psi_i;
  BatteryState phi_f;
  BatteryState phi_i;  // T e^{-H_B/2kT} psi_i, normalized
  BatteryState psi_f;  // T e^{-H_B/2kT} phi_f, normalized
  double Z_tilde_psi_i;
  double Z_tilde_phi_f;
};

StateQuadruple make_quadruple(const FockSpace& space, const BatteryState& psi_i, const BatteryState& phi_f);

struct AqcRun {
  StateQuadruple states;
  ProtocolResult forward;
  ProtocolResult reverse;
  CrooksPrediction prediction;  // delta E~ from the numeric Z~, W_q from mean energies
  ErrorReport errors;
  std::optional<double> q_inferred;
};

// Both protocol directions plus every error measure for one state pair.
AqcRun run_aqc(const BranchDynamics& dyn, const BatteryState& psi_i, const BatteryState& phi_f, double tau);

}  // namespace aqc
