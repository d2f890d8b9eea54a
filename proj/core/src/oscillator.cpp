#include "aqc/oscillator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "aqc/error.hpp"

namespace aqc {

namespace {

constexpr double kRescale = 1e100;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Coefficients of D(alpha)S(r)|0> =
//   C exp(nu a^dag - t/2 a^dag^2)|0>,  t = tanh r, nu = alpha + t alpha*,
//   C = exp(-|alpha|^2/2 - t alpha*^2/2) / sqrt(cosh r).
// d_{n+1} = (nu d_n - t sqrt(n) d_{n-1}) / sqrt(n+1), carried with a log scale.
ComplexVector squeezed_coefficients(int dim, cplx alpha, double r) {
  const double t = std::tanh(r);
  const cplx nu = alpha + t * std::conj(alpha);
  const cplx log_c = -0.5 * std::norm(alpha) - 0.5 * t * std::conj(alpha) * std::conj(alpha) -
                     0.5 * std::log(std::cosh(r));
  ComplexVector out(dim);
  double log_scale = 0.0;
  cplx prev = 0.0;
  cplx cur = 1.0;
  auto emit = [&](int n) {
    double mag = std::abs(cur);
    if (mag == 0.0) {
      out[n] = 0.0;
      return;
    }
    double lm = log_c.real() + log_scale + std::log(mag);
    out[n] = std::polar(std::exp(lm), log_c.imag() + std::arg(cur));
  };
  emit(0);
  for (int n = 0; n + 1 < dim; ++n) {
    cplx next = (nu * cur - t * std::sqrt(double(n)) * prev) / std::sqrt(double(n + 1));
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += std::log(kRescale);
    }
    emit(n + 1);
  }
  return out;
}

double cat_norm_squared(const Cat& cat) {
  double total = 0.0;
  for (const auto& j : cat.terms)
    for (const auto& k : cat.terms)
      total += (std::conj(j.weight) * k.weight * coherent_overlap(j.alpha, k.alpha)).real();
  return total;
}

void validate_spec(const StateSpec& spec) {
  std::visit(overloaded{
                 [](const Coherent&) {},
                 [](const SqueezedDisplaced& s) {
                   if (!std::isfinite(s.r)) throw Error(ErrorCode::ConfigInvalid, "squeeze r must be finite");
                 },
                 [](const Cat& c) {
                   if (c.terms.empty()) throw Error(ErrorCode::ConfigInvalid, "cat state needs at least one term");
                   bool any = false;
                   for (const auto& t : c.terms) any = any || std::abs(t.weight) > 0.0;
                   if (!any) throw Error(ErrorCode::ConfigInvalid, "cat weights are all zero");
                 },
                 [](const FockLevel& f) {
                   if (f.n < 0) throw Error(ErrorCode::ConfigInvalid, "Fock level must be non-negative");
                 },
             },
             spec);
}

}  // namespace

FockSpace::FockSpace(int dim, double hbar_omega, double kT) : dim_(dim), hbar_omega_(hbar_omega), kT_(kT) {
  if (dim < 2) throw Error(ErrorCode::ConfigInvalid, "dim must be >= 2");
  if (!(hbar_omega > 0.0) || !std::isfinite(hbar_omega))
    throw Error(ErrorCode::ConfigInvalid, "hbar_omega must be positive");
  if (!(kT > 0.0) || !std::isfinite(kT)) throw Error(ErrorCode::ConfigInvalid, "kT must be positive");
}

OperatorMatrix::OperatorMatrix(ComplexMatrix e, bool h) : entries(std::move(e)), hermitian(h) {
  if (entries.rows() != entries.cols()) throw std::invalid_argument("operator matrix must be square");
  if (hermitian) {
    double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
    if (asym > 1e-12 * scale) throw std::invalid_argument("operator flagged hermitian is not");
  }
}

Eigen::VectorXd oscillator_energies(const FockSpace& space) {
  Eigen::VectorXd e(space.dim());
  for (int n = 0; n < space.dim(); ++n) e[n] = space.hbar_omega() * (n + 0.5);
  return e;
}

OscillatorOperators build_operators(const FockSpace& space) {
  const int N = space.dim();
  ComplexMatrix a = ComplexMatrix::Zero(N, N);
  for (int n = 1; n < N; ++n) a(n - 1, n) = std::sqrt(double(n));
  ComplexMatrix ad = a.adjoint();
  ComplexMatrix num = ComplexMatrix::Zero(N, N);
  for (int n = 0; n < N; ++n) num(n, n) = double(n);
  ComplexMatrix x = 0.5 * (a + ad);
  ComplexMatrix p = (a - ad) / cplx(0.0, 2.0);
  ComplexMatrix h = oscillator_energies(space).cast<cplx>().asDiagonal();
  return {OperatorMatrix(a, false), OperatorMatrix(ad, false), OperatorMatrix(num, true),
          OperatorMatrix(x, true),  OperatorMatrix(p, true),   OperatorMatrix(h, true)};
}

Cat symmetric_cat(cplx alpha) { return Cat{{{1.0, alpha}, {1.0, -alpha}}}; }

Cat one_sided_cat(cplx alpha, cplx shift) { return Cat{{{1.0, alpha}, {1.0, alpha + shift}}}; }

StateSpec conjugate(const StateSpec& spec) {
  return std::visit(overloaded{
                        [](const Coherent& c) -> StateSpec { return Coherent{std::conj(c.alpha)}; },
                        [](const SqueezedDisplaced& s) -> StateSpec {
                          return SqueezedDisplaced{std::conj(s.alpha), s.r};
                        },
                        [](const Cat& c) -> StateSpec {
                          Cat out;
                          for (const auto& t : c.terms) out.terms.push_back({std::conj(t.weight), std::conj(t.alpha)});
                          return out;
                        },
                        [](const FockLevel& f) -> StateSpec { return f; },
                    },
                    spec);
}

cplx coherent_overlap(cplx beta, cplx alpha) {
  return std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)) + std::conj(beta) * alpha);
}

ComplexVector analytic_amplitudes(int dim, const StateSpec& spec) {
  validate_spec(spec);
  return std::visit(overloaded{
                        [&](const Coherent& c) { return squeezed_coefficients(dim, c.alpha, 0.0); },
                        [&](const SqueezedDisplaced& s) { return squeezed_coefficients(dim, s.alpha, s.r); },
                        [&](const Cat& c) {
                          ComplexVector v = ComplexVector::Zero(dim);
                          for (const auto& t : c.terms) v += t.weight * squeezed_coefficients(dim, t.alpha, 0.0);
                          return ComplexVector(v / std::sqrt(cat_norm_squared(c)));
                        },
                        [&](const FockLevel& f) {
                          ComplexVector v = ComplexVector::Zero(dim);
                          if (f.n < dim) v[f.n] = 1.0;
                          return v;
                        },
                    },
                    spec);
}

BatteryState prepare_state(const FockSpace& space, const StateSpec& spec) {
  if (const auto* f = std::get_if<FockLevel>(&spec); f && f->n >= space.dim()) {
    throw Error(ErrorCode::TruncationInsufficient,
                "Fock level " + std::to_string(f->n) + " needs dim > " + std::to_string(f->n));
  }
  ComplexVector v = analytic_amplitudes(space.dim(), spec);
  double kept = v.squaredNorm();
  double deficit = 1.0 - kept;
  if (!(deficit < kNormDeficitLimit)) {
    std::ostringstream msg;
    msg << "norm deficit " << deficit << " at dim " << space.dim() << "; increase dim";
    throw Error(ErrorCode::TruncationInsufficient, msg.str());
  }
  return {v / std::sqrt(kept), spec, deficit};
}

BatteryState state_from_amplitudes(ComplexVector amplitudes) {
  double nrm = amplitudes.norm();
  if (!(nrm > 0.0)) throw Error(ErrorCode::ConfigInvalid, "zero state vector");
  return {amplitudes / nrm, std::nullopt, 0.0};
}

GibbsWeighted apply_gibbs_weight(const FockSpace& space, const BatteryState& state) {
  const double chi = space.chi();
  const auto& c = state.amplitudes;
  const Eigen::Index N = c.size();
  // log-sum-exp of |c_n|^2 e^{-2 chi (n + 1/2)}
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index n = 0; n < N; ++n) {
    double m = std::norm(c[n]);
    if (m > 0.0) top = std::max(top, std::log(m) - 2.0 * chi * (n + 0.5));
  }
  if (!std::isfinite(top)) throw Error(ErrorCode::ConfigInvalid, "zero state vector");
  double acc = 0.0;
  for (Eigen::Index n = 0; n < N; ++n) {
    double m = std::norm(c[n]);
    if (m > 0.0) acc += std::exp(std::log(m) - 2.0 * chi * (n + 0.5) - top);
  }
  const double log_z = top + std::log(acc);
  if (log_z < std::log(1e-300))
    throw Error(ErrorCode::UnderflowRisk, "Gibbs normalisation below 1e-300; chi or state energy too large");
  ComplexVector w(N);
  for (Eigen::Index n = 0; n < N; ++n) w[n] = c[n] * std::exp(-chi * (n + 0.5) - 0.5 * log_z);
  w /= w.norm();
  return {{w, std::nullopt, state.norm_deficit}, std::exp(log_z)};
}

BatteryState time_reverse(const BatteryState& state) {
  BatteryState out{state.amplitudes.conjugate(), std::nullopt, state.norm_deficit};
  if (state.recipe) out.recipe = conjugate(*state.recipe);
  return out;
}

double effective_potential(const Eigen::VectorXd& energies, double kT, const ComplexVector& amplitudes) {
  if (energies.size() != amplitudes.size()) throw std::invalid_argument("energy/amplitude size mismatch");
  const double nrm2 = amplitudes.squaredNorm();
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index n = 0; n < amplitudes.size(); ++n) {
    double m = std::norm(amplitudes[n]);
    if (m > 0.0) top = std::max(top, std::log(m / nrm2) - energies[n] / kT);
  }
  double acc = 0.0;
  for (Eigen::Index n = 0; n < amplitudes.size(); ++n) {
    double m = std::norm(amplitudes[n]);
    if (m > 0.0) acc += std::exp(std::log(m / nrm2) - energies[n] / kT - top);
  }
  const double log_z = top + std::log(acc);
  if (log_z < std::log(1e-300))
    throw Error(ErrorCode::UnderflowRisk, "<psi|exp(-H/kT)|psi> below 1e-300");
  return -kT * log_z;
}

double effective_potential(const FockSpace& space, const BatteryState& state) {
  return effective_potential(oscillator_energies(space), space.kT(), state.amplitudes);
}

double mean_energy(const FockSpace& space, const BatteryState& state) {
  const auto& c = state.amplitudes;
  return (c.cwiseAbs2().array() * oscillator_energies(space).array()).sum() / c.squaredNorm();
}

double fidelity(const ComplexVector& a, const ComplexVector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

double fidelity(const BatteryState& a, const BatteryState& b) { return fidelity(a.amplitudes, b.amplitudes); }

cplx mean_displacement(const BatteryState& state) {
  const auto& c = state.amplitudes;
  cplx acc = 0.0;
  for (Eigen::Index n = 1; n < c.size(); ++n) acc += std::conj(c[n - 1]) * std::sqrt(double(n)) * c[n];
  return acc / c.squaredNorm();
}

}  // namespace aqc
