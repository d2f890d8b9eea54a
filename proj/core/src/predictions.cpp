#include "aqc/predictions.hpp"

#include <cmath>

namespace aqc {

double partition_function(double E, double kT) { return 2.0 * std::cosh(E / kT); }

double free_energy_change(const TwoLevelSystem& sys) {
  // log cosh written to survive large |E|/kT
  auto log_cosh = [](double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
  };
  return -sys.kT * (log_cosh(sys.E_f / sys.kT) - log_cosh(sys.E_i / sys.kT));
}

double q_factor(double chi) {
  if (chi < 1e-8) return 1.0 - chi * chi / 3.0;
  return std::tanh(chi) / chi;
}

ThermalSplit thermal_frequency_split(const FockSpace& space) {
  double total = space.kT() / q_factor(space.chi());
  double vac = 0.5 * space.hbar_omega();
  return {total, total - vac, vac};
}

cplx coherent_pair_map(cplx alpha, double chi) { return alpha * std::exp(-chi); }

double coherent_Z_tilde(cplx alpha, double chi) {
  return std::exp(-chi - std::norm(alpha) * (-std::expm1(-2.0 * chi)));
}

double coherent_delta_E(cplx alpha_i, cplx alpha_f, double chi, double kT) {
  return kT * (std::norm(alpha_i) - std::norm(alpha_f)) * (-std::expm1(-2.0 * chi));
}

QuantumWork quantum_work(cplx alpha_i, cplx alpha_f, double chi, double hbar_omega) {
  double d = std::exp(-2.0 * chi);
  double plus = (d * std::norm(alpha_i) - std::norm(alpha_f)) * hbar_omega;
  double minus = (d * std::norm(alpha_f) - std::norm(alpha_i)) * hbar_omega;
  return {plus, minus, 0.5 * (plus - minus)};
}

SqueezedMap squeezed_pair_map(cplx alpha, double r, double chi) {
  const double t = std::tanh(r);
  const double d = std::exp(-2.0 * chi);
  const double ts = d * t;
  const double s = std::atanh(ts);
  const double e = std::exp(-chi);
  cplx mu(alpha.real() * e * (1.0 + t) / (1.0 + ts), alpha.imag() * e * (1.0 - t) / (1.0 - ts));
  // <alpha,r|e^{-H_B/kT}|alpha,r> =
  //   e^{-chi} cosh s / cosh r * exp(|mu|^2 + ts Re mu^2 - |alpha|^2 - t Re alpha^2)
  double log_z = -chi + std::log(std::cosh(s)) - std::log(std::cosh(r)) + std::norm(mu) + ts * (mu * mu).real() -
                 std::norm(alpha) - t * (alpha * alpha).real();
  return {s, mu, std::exp(log_z)};
}

double squeezed_Z_tilde_real(double alpha, double r, double chi) {
  const double t = std::tanh(r);
  const double d = std::exp(-2.0 * chi);
  const double a2 = alpha * alpha;
  return std::exp(-chi - a2 * (1.0 + t)) / (std::cosh(r) * std::sqrt(1.0 - t * t * d * d)) *
         std::exp(a2 * d * (1.0 + t) * (1.0 + t) / (1.0 + t * d));
}

double squeezed_delta_E(cplx alpha_i, cplx alpha_f, double r, double chi, double kT) {
  double zi = squeezed_pair_map(alpha_i, r, chi).Z_tilde;
  double zf = squeezed_pair_map(alpha_f, r, chi).Z_tilde;
  return -kT * (std::log(zi) - std::log(zf));
}

double squeezed_quantum_work(cplx alpha_i, cplx alpha_f, double r, double chi, double hbar_omega) {
  // mean energy of |mu, s> is hbar omega (|mu|^2 + sinh^2 s + 1/2); the sinh^2 terms cancel
  cplx mu_i = squeezed_pair_map(alpha_i, r, chi).mu;
  cplx mu_f = squeezed_pair_map(std::conj(alpha_f), r, chi).mu;
  return 0.5 * hbar_omega * (std::norm(mu_i) - std::norm(alpha_f) - std::norm(mu_f) + std::norm(alpha_i));
}

double cat_eta(double chi) { return std::exp(0.5 * std::expm1(-2.0 * chi)); }

CatMap cat_pair_map(const std::vector<CatTerm>& terms, double chi) {
  const double eta = cat_eta(chi);
  const double d = std::exp(-2.0 * chi);
  CatMap out{eta, {}, 0.0};
  for (const auto& t : terms) out.mapped_terms.push_back({t.weight * std::pow(eta, std::norm(t.alpha)), t.alpha * std::exp(-chi)});
  double num = 0.0, den = 0.0;
  for (const auto& j : terms) {
    for (const auto& k : terms) {
      cplx w = std::conj(j.weight) * k.weight;
      double base = -0.5 * (std::norm(j.alpha) + std::norm(k.alpha));
      num += (w * std::exp(base + d * std::conj(j.alpha) * k.alpha)).real();
      den += (w * std::exp(base + std::conj(j.alpha) * k.alpha)).real();
    }
  }
  out.Z_tilde = std::exp(-chi) * num / den;
  return out;
}

double predicted_ratio(const TwoLevelSystem& sys, double delta_E_tilde) {
  return std::exp((delta_E_tilde - free_energy_change(sys)) / sys.kT);
}

double predicted_ratio_thermal(const TwoLevelSystem& sys, double W_q, double hbar_omega_T) {
  return std::exp(-free_energy_change(sys) / sys.kT) * std::exp(W_q / hbar_omega_T);
}

CrooksPrediction make_prediction(const TwoLevelSystem& sys, double delta_E_tilde, std::optional<double> W_q,
                                 double w_tolerance) {
  CrooksPrediction p{free_energy_change(sys), delta_E_tilde, predicted_ratio(sys, delta_E_tilde), W_q, std::nullopt};
  if (W_q && std::abs(*W_q) > w_tolerance) p.q = delta_E_tilde / *W_q;
  return p;
}

CrooksPrediction coherent_prediction(const TwoLevelSystem& sys, cplx alpha_i, cplx alpha_f, double hbar_omega) {
  double chi = hbar_omega / (2.0 * sys.kT);
  return make_prediction(sys, coherent_delta_E(alpha_i, alpha_f, chi, sys.kT),
                         quantum_work(alpha_i, alpha_f, chi, hbar_omega).W_q);
}

CrooksPrediction squeezed_prediction(const TwoLevelSystem& sys, cplx alpha_i, cplx alpha_f, double r,
                                     double hbar_omega) {
  double chi = hbar_omega / (2.0 * sys.kT);
  return make_prediction(sys, squeezed_delta_E(alpha_i, alpha_f, r, chi, sys.kT),
                         squeezed_quantum_work(alpha_i, alpha_f, r, chi, hbar_omega));
}

}  // namespace aqc
