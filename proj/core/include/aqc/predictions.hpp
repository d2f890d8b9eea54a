#pragma once

#include <optional>
#include <vector>

#include "aqc/oscillator.hpp"

namespace aqc {

// H_S = E sigma_z before (E_i) and after (E_f) the protocol.
struct TwoLevelSystem {
  double E_i;
  double E_f;
  double kT;
};

double partition_function(double E, double kT);  // 2 cosh(E/kT)
double free_energy_change(const TwoLevelSystem& sys);

double q_factor(double chi);  // tanh(chi)/chi, 1 at chi = 0

struct ThermalSplit {
  double hbar_omega_T;
  double thermal_part;
  double vacuum_part;
};

ThermalSplit thermal_frequency_split(const FockSpace& space);

// ---------------------------------------------------------------------------
// coherent

cplx coherent_pair_map(cplx alpha, double chi);  // alpha e^{-chi}
double coherent_Z_tilde(cplx alpha, double chi);
double coherent_delta_E(cplx alpha_i, cplx alpha_f, double chi, double kT);

struct QuantumWork {
  double delta_E_plus;
  double delta_E_minus;
  double W_q;
};

QuantumWork quantum_work(cplx alpha_i, cplx alpha_f, double chi, double hbar_omega);

// ---------------------------------------------------------------------------
// squeezed

struct SqueezedMap {
  double s;
  cplx mu;
  double Z_tilde;
};

SqueezedMap squeezed_pair_map(cplx alpha, double r, double chi);

// Closed form valid for real alpha only; kept as an independent check.
double squeezed_Z_tilde_real(double alpha, double r, double chi);

double squeezed_delta_E(cplx alpha_i, cplx alpha_f, double r, double chi, double kT);
double squeezed_quantum_work(cplx alpha_i, cplx alpha_f, double r, double chi, double hbar_omega);

// ---------------------------------------------------------------------------
// cat

struct CatMap {
  double eta_chi;
  std::vector<CatTerm> mapped_terms;
  double Z_tilde;  // for the normalized cat
};

double cat_eta(double chi);
CatMap cat_pair_map(const std::vector<CatTerm>& terms, double chi);

// ---------------------------------------------------------------------------

struct CrooksPrediction {
  double delta_F;
  double delta_E_tilde;
  double predicted_ratio;
  std::optional<double> W_q;
  std::optional<double> q;
};

double predicted_ratio(const TwoLevelSystem& sys, double delta_E_tilde);
// exp(-dF/kT) exp(W_q / hbar_omega_T)
double predicted_ratio_thermal(const TwoLevelSystem& sys, double W_q, double hbar_omega_T);

// q is left empty when W_q vanishes (|W_q| <= w_tolerance).
CrooksPrediction make_prediction(const TwoLevelSystem& sys, double delta_E_tilde, std::optional<double> W_q,
                                 double w_tolerance = 0.0);

CrooksPrediction coherent_prediction(const TwoLevelSystem& sys, cplx alpha_i, cplx alpha_f, double hbar_omega);
CrooksPrediction squeezed_prediction(const TwoLevelSystem& sys, cplx alpha_i, cplx alpha_f, double r,
                                     double hbar_omega);

}  // namespace aqc
