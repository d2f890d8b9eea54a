#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace aqc {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Truncated oscillator basis |0>..|dim-1>. hbar = 1 throughout.
class FockSpace {
public:
  FockSpace(int dim, double hbar_omega, double kT);

  int dim() const { return dim_; }
  double hbar_omega() const { return hbar_omega_; }
  double omega() const { return hbar_omega_; }
  double kT() const { return kT_; }
  double chi() const { return hbar_omega_ / (2.0 * kT_); }

  FockSpace with_dim(int dim) const { return {dim, hbar_omega_, kT_}; }
  FockSpace with_kT(double kT) const { return {dim_, hbar_omega_, kT}; }

private:
  int dim_;
  double hbar_omega_;
  double kT_;
};

struct OperatorMatrix {
  OperatorMatrix() = default;
  OperatorMatrix(ComplexMatrix entries, bool hermitian);

  ComplexMatrix entries;
  bool hermitian = false;

  Eigen::Index dim() const { return entries.rows(); }
};

struct OscillatorOperators {
  OperatorMatrix a;
  OperatorMatrix a_dagger;
  OperatorMatrix number;
  OperatorMatrix position;  // X = (a + a^dag)/2
  OperatorMatrix momentum;  // P = (a - a^dag)/(2i)
  OperatorMatrix H_B;
};

OscillatorOperators build_operators(const FockSpace& space);

// Energies hbar*omega*(n + 1/2) of the diagonal oscillator Hamiltonian.
Eigen::VectorXd oscillator_energies(const FockSpace& space);

// ---------------------------------------------------------------------------
// state recipes

struct Coherent {
  cplx alpha;
};

// |alpha, r> = D(alpha) S(r) |0>,  S(r) = exp(r/2 (a^2 - a^dag^2)); r > 0 squeezes X.
struct SqueezedDisplaced {
  cplx alpha;
  double r = 0.0;
};

struct CatTerm {
  cplx weight;
  cplx alpha;
};

// Unnormalized superposition sum_k weight_k |alpha_k>; normalized on preparation.
struct Cat {
  std::vector<CatTerm> terms;
};

struct FockLevel {
  int n = 0;
};

using StateSpec = std::variant<Coherent, SqueezedDisplaced, Cat, FockLevel>;

Cat symmetric_cat(cplx alpha);            // |alpha> + |-alpha>
Cat one_sided_cat(cplx alpha, cplx shift);  // |alpha> + |alpha + shift>

StateSpec conjugate(const StateSpec& spec);

struct BatteryState {
  ComplexVector amplitudes;
  std::optional<StateSpec> recipe;  // empty for states produced by maps or evolution
  double norm_deficit = 0.0;
};

inline constexpr double kNormDeficitLimit = 1e-8;

// Fock coefficients of the untruncated normalized state, cut at dim.
ComplexVector analytic_amplitudes(int dim, const StateSpec& spec);

// Throws TruncationInsufficient when the cut loses >= 1e-8 of the norm.
BatteryState prepare_state(const FockSpace& space, const StateSpec& spec);

// Normalizes an arbitrary amplitude vector (no recipe).
BatteryState state_from_amplitudes(ComplexVector amplitudes);

struct GibbsWeighted {
  BatteryState weighted;
  double Z_tilde;
};

// e^{-H_B/2kT}|psi>/sqrt(Z~),  Z~ = <psi|e^{-H_B/kT}|psi>.
GibbsWeighted apply_gibbs_weight(const FockSpace& space, const BatteryState& state);

BatteryState time_reverse(const BatteryState& state);

// -kT ln <psi|e^{-H/kT}|psi> for H diagonal in the Fock basis with the given energies.
double effective_potential(const Eigen::VectorXd& energies, double kT, const ComplexVector& amplitudes);
double effective_potential(const FockSpace& space, const BatteryState& state);

double mean_energy(const FockSpace& space, const BatteryState& state);
double fidelity(const BatteryState& a, const BatteryState& b);
double fidelity(const ComplexVector& a, const ComplexVector& b);

// <beta|alpha> for normalized coherent states.
cplx coherent_overlap(cplx beta, cplx alpha);

// <a> of the state; the mean-matched coherent state has this displacement.
cplx mean_displacement(const BatteryState& state);

}  // namespace aqc
