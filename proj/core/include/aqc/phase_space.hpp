#pragma once

#include "aqc/oscillator.hpp"

namespace aqc {

// Phase-space axes use q = sqrt(2) X and its conjugate p (hbar = 1), so the
// vacuum Wigner function peaks at 1/pi and a coherent state sits at
// (sqrt2 Re alpha, sqrt2 Im alpha).
struct GridSpec {
  int nx = 512;
  int np = 512;
  double x_min = -1.0;
  double x_max = 1.0;
  double p_min = -1.0;
  double p_max = 1.0;

  // +-(sqrt(2 dim) + 3) on both axes
  static GridSpec covering(const FockSpace& space, int points = 512);
  // tight box around the state's support
  static GridSpec fitted(const BatteryState& state, int points = 512);
};

struct WignerGrid {
  Eigen::VectorXd x_axis;
  Eigen::VectorXd p_axis;
  Eigen::MatrixXd values;  // values(i, j) = W(x_i, p_j)
  double min_value = 0.0;

  double dx() const;
  double dp() const;
};

Eigen::VectorXcd position_wavefunction(const BatteryState& state, const Eigen::VectorXd& q);
Eigen::VectorXcd momentum_wavefunction(const BatteryState& state, const Eigen::VectorXd& p);

// Throws GridTooSmall when less than 99.9% of the position or momentum
// probability lies inside the grid.
WignerGrid wigner_of_state(const FockSpace& space, const BatteryState& state, const GridSpec& grid);

double wigner_point(const BatteryState& state, double x, double p);

double negativity_volume(const WignerGrid& grid);
double grid_integral(const WignerGrid& grid);
Eigen::VectorXd position_marginal(const WignerGrid& grid);

BatteryState coherent_approximation(const FockSpace& space, const BatteryState& state);

}  // namespace aqc
