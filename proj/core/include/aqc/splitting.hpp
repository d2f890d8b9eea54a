#pragma once

#include <functional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "aqc/oscillator.hpp"

namespace aqc {

// Constant E_i for x <= x_i, linear ramp, constant E_f for x >= x_f.
struct FlatEnds {
  double E_i, E_f, x_i, x_f;
};

// E_i + (E_f - E_i) sin^2(pi (x - x_i) / (2 (x_f - x_i))): trough at x_i, crest at x_f.
struct Sinusoidal {
  double E_i, E_f, x_i, x_f;
};

// Straight line through (x_i, E_i) and (x_f, E_f) on the whole axis.
struct Linear {
  double E_i, E_f, x_i, x_f;
};

// Piecewise-linear interpolation; x strictly increasing. No extrapolation.
struct Tabulated {
  std::vector<std::pair<double, double>> samples;
};

using SplittingProfile = std::variant<FlatEnds, Sinusoidal, Linear, Tabulated>;

void validate_profile(const SplittingProfile& profile);

double profile_value(const SplittingProfile& profile, double x);

// The half-splittings of the initial and final effective system Hamiltonians.
std::pair<double, double> profile_end_values(const SplittingProfile& profile);

// Points where the profile has a kink; quadrature panels are split there.
std::vector<double> profile_kinks(const SplittingProfile& profile);

enum class OperatorMethod {
  Galerkin,          // exact Hermite-function matrix elements by piecewise Gauss-Legendre
  SpectralCalculus,  // E evaluated on the eigenvalues of the truncated X
};

// Half-width (in X) of the window used for Galerkin matrix elements.
double galerkin_half_width(int dim);

OperatorMatrix function_of_position(const FockSpace& space, const std::function<double(double)>& f,
                                    std::span<const double> kinks,
                                    OperatorMethod method = OperatorMethod::Galerkin);

OperatorMatrix profile_operator(const FockSpace& space, const SplittingProfile& profile,
                                OperatorMethod method = OperatorMethod::Galerkin);

struct JointHamiltonian {
  OperatorMatrix H_e;  // H_B + E(X)
  OperatorMatrix H_g;  // H_B - E(X)
  SplittingProfile profile;
  FockSpace space;
};

JointHamiltonian joint_hamiltonian(const FockSpace& space, const SplittingProfile& profile,
                                   OperatorMethod method = OperatorMethod::Galerkin);

}  // namespace aqc
