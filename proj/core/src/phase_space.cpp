#include "aqc/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "aqc/error.hpp"
#include "aqc/hermite.hpp"

namespace aqc {

namespace {

constexpr double kMassFraction = 0.999;

// Highest Fock level carrying weight above round-off.
int effective_top_level(const ComplexVector& c) {
  const double total = c.squaredNorm();
  double tail = 0.0;
  for (Eigen::Index n = c.size() - 1; n >= 0; --n) {
    tail += std::norm(c[n]);
    if (tail > 1e-16 * total) return int(n);
  }
  return 0;
}

// |psi(q)| and its Fourier transform are negligible beyond this radius.
double support_radius(const ComplexVector& c) { return std::sqrt(2.0 * effective_top_level(c) + 1.0) + 6.0; }

Eigen::VectorXd linspace(double lo, double hi, int n) {
  if (n == 1) return Eigen::VectorXd::Constant(1, lo);
  return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

double inside_fraction(const Eigen::VectorXcd& f, const Eigen::VectorXd& axis, double lo, double hi) {
  double in = 0.0, all = 0.0;
  for (Eigen::Index j = 0; j < axis.size(); ++j) {
    double m = std::norm(f[j]);
    all += m;
    if (axis[j] >= lo && axis[j] <= hi) in += m;
  }
  return all > 0.0 ? in / all : 0.0;
}

}  // namespace

GridSpec GridSpec::covering(const FockSpace& space, int points) {
  double half = std::sqrt(2.0 * space.dim()) + 3.0;
  return {points, points, -half, half, -half, half};
}

GridSpec GridSpec::fitted(const BatteryState& state, int points) {
  const double R = support_radius(state.amplitudes);
  Eigen::VectorXd axis = linspace(-R, R, 4096);
  auto box = [&](const Eigen::VectorXcd& f, double& lo, double& hi) {
    Eigen::VectorXd m = f.cwiseAbs2();
    double total = m.sum(), acc = 0.0;
    lo = axis[0];
    hi = axis[axis.size() - 1];
    for (Eigen::Index j = 0; j < axis.size(); ++j) {
      acc += m[j];
      if (acc > 1e-9 * total) {
        lo = axis[j];
        break;
      }
    }
    acc = 0.0;
    for (Eigen::Index j = axis.size() - 1; j >= 0; --j) {
      acc += m[j];
      if (acc > 1e-9 * total) {
        hi = axis[j];
        break;
      }
    }
    lo -= 1.5;
    hi += 1.5;
  };
  GridSpec g;
  g.nx = g.np = points;
  box(position_wavefunction(state, axis), g.x_min, g.x_max);
  box(momentum_wavefunction(state, axis), g.p_min, g.p_max);
  return g;
}

double WignerGrid::dx() const { return x_axis.size() > 1 ? x_axis[1] - x_axis[0] : 1.0; }
double WignerGrid::dp() const { return p_axis.size() > 1 ? p_axis[1] - p_axis[0] : 1.0; }

Eigen::VectorXcd position_wavefunction(const BatteryState& state, const Eigen::VectorXd& q) {
  const auto& c = state.amplitudes;
  Eigen::MatrixXd table = hermite_function_table(int(c.size()), q);
  return table.transpose().cast<cplx>() * c;
}

Eigen::VectorXcd momentum_wavefunction(const BatteryState& state, const Eigen::VectorXd& p) {
  ComplexVector c = state.amplitudes;
  const cplx phase[4] = {1.0, cplx(0, -1), -1.0, cplx(0, 1)};
  for (Eigen::Index n = 0; n < c.size(); ++n) c[n] *= phase[n % 4];
  Eigen::MatrixXd table = hermite_function_table(int(c.size()), p);
  return table.transpose().cast<cplx>() * c;
}

WignerGrid wigner_of_state(const FockSpace& space, const BatteryState& state, const GridSpec& grid) {
  if (state.amplitudes.size() != space.dim())
    throw Error(ErrorCode::ConfigInvalid, "state dimension does not match the Fock space");
  if (grid.nx < 2 || grid.np < 2 || !(grid.x_max > grid.x_min) || !(grid.p_max > grid.p_min))
    throw Error(ErrorCode::ConfigInvalid, "Wigner grid needs >= 2 points and a positive span on each axis");

  WignerGrid out;
  out.x_axis = linspace(grid.x_min, grid.x_max, grid.nx);
  out.p_axis = linspace(grid.p_min, grid.p_max, grid.np);
  const double dx = out.dx();

  const double R = support_radius(state.amplitudes);
  const double p_extent = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
  // trapezoid in y is alias-free while 2 pi / h exceeds the integrand's bandwidth 2 (R + |p|)
  const double h_max = std::numbers::pi / (R + p_extent);
  const int sub = std::max(1, int(std::ceil(dx / h_max)));
  const double h = dx / sub;

  // internal samples on x_min + (j - j0) h spanning the grid and the support
  const int j0 = grid.x_min > -R ? int(std::ceil((grid.x_min + R) / h)) : 0;
  const double hi = std::max(grid.x_max, R);
  const int M = j0 + int(std::ceil((hi - grid.x_min) / h)) + 1;
  Eigen::VectorXd q(M);
  for (int j = 0; j < M; ++j) q[j] = grid.x_min + (j - j0) * h;
  Eigen::VectorXcd psi = position_wavefunction(state, q);

  Eigen::VectorXd pgrid = linspace(-R, R, 2048);
  Eigen::VectorXcd phi = momentum_wavefunction(state, pgrid);
  double fx = inside_fraction(psi, q, grid.x_min, grid.x_max);
  double fp = inside_fraction(phi, pgrid, grid.p_min, grid.p_max);
  if (fx < kMassFraction || fp < kMassFraction) {
    std::ostringstream msg;
    msg << "grid holds " << fx << " of the position and " << fp << " of the momentum probability";
    throw Error(ErrorCode::GridTooSmall, msg.str());
  }

  // F(j, i) = psi*(x_i + j h) psi(x_i - j h)
  const int J = M;
  Eigen::MatrixXd re = Eigen::MatrixXd::Zero(J, grid.nx);
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(J, grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    const int I = j0 + i * sub;
    const int reach = std::min(I, M - 1 - I);
    for (int j = 0; j <= reach; ++j) {
      cplx f = std::conj(psi[I + j]) * psi[I - j];
      re(j, i) = f.real();
      im(j, i) = f.imag();
    }
  }
  Eigen::MatrixXd cs(grid.np, J), sn(grid.np, J);
  for (int k = 0; k < grid.np; ++k) {
    for (int j = 0; j < J; ++j) {
      double w = j == 0 ? 1.0 : 2.0;
      double arg = 2.0 * out.p_axis[k] * j * h;
      cs(k, j) = w * std::cos(arg);
      sn(k, j) = w * std::sin(arg);
    }
  }
  out.values = (h / std::numbers::pi) * (cs * re - sn * im).transpose();
  out.min_value = out.values.minCoeff();
  return out;
}

double wigner_point(const BatteryState& state, double x, double p) {
  const double R = support_radius(state.amplitudes);
  const double h = std::numbers::pi / (R + std::abs(p)) / 2.0;
  const int J = int(std::ceil((R + std::abs(x)) / h)) + 1;
  Eigen::VectorXd q(2 * J + 1);
  for (int j = -J; j <= J; ++j) q[j + J] = x + j * h;
  Eigen::VectorXcd psi = position_wavefunction(state, q);
  double acc = 0.0;
  for (int j = 0; j <= J; ++j) {
    cplx f = std::conj(psi[J + j]) * psi[J - j] * std::polar(1.0, 2.0 * p * j * h);
    acc += (j == 0 ? 1.0 : 2.0) * f.real();
  }
  return h / std::numbers::pi * acc;
}

double negativity_volume(const WignerGrid& grid) {
  return grid.values.cwiseMin(0.0).sum() * -grid.dx() * grid.dp();
}

double grid_integral(const WignerGrid& grid) { return grid.values.sum() * grid.dx() * grid.dp(); }

Eigen::VectorXd position_marginal(const WignerGrid& grid) { return grid.values.rowwise().sum() * grid.dp(); }

BatteryState coherent_approximation(const FockSpace& space, const BatteryState& state) {
  return prepare_state(space, Coherent{mean_displacement(state)});
}

}  // namespace aqc
