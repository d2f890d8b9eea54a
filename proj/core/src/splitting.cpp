#include "aqc/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "aqc/error.hpp"
#include "aqc/hermite.hpp"

namespace aqc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

template <class P>
void check_ramp(const P& p, const char* name) {
  if (!std::isfinite(p.E_i) || !std::isfinite(p.E_f) || !std::isfinite(p.x_i) || !std::isfinite(p.x_f))
    throw Error(ErrorCode::ConfigInvalid, std::string(name) + " profile has non-finite parameters");
  if (!(p.x_i < p.x_f)) throw Error(ErrorCode::ConfigInvalid, std::string(name) + " profile needs x_i < x_f");
}

double tabulated_value(const Tabulated& t, double x) {
  const auto& s = t.samples;
  if (x < s.front().first || x > s.back().first) {
    std::ostringstream msg;
    msg << "x = " << x << " outside table [" << s.front().first << ", " << s.back().first << "]";
    throw Error(ErrorCode::TabulatedOutOfRange, msg.str());
  }
  auto hi = std::lower_bound(s.begin(), s.end(), x, [](const auto& p, double v) { return p.first < v; });
  if (hi == s.begin()) return hi->second;
  auto lo = hi - 1;
  double w = (x - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

// Nodes and weights of a composite 16-point Gauss-Legendre rule on [lo, hi],
// with panel edges at every breakpoint.
void composite_rule(double lo, double hi, std::vector<double> breaks, double max_panel, Eigen::VectorXd& nodes,
                    Eigen::VectorXd& weights) {
  using GL = boost::math::quadrature::gauss<double, 16>;
  const auto& abs_ = GL::abscissa();
  const auto& wts = GL::weights();
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double b) { return b < lo || b > hi; }),
               breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<double> xs, ws;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    double a = breaks[k], b = breaks[k + 1];
    int panels = std::max(1, int(std::ceil((b - a) / max_panel)));
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      double c = a + (p + 0.5) * h;
      for (std::size_t i = 0; i < abs_.size(); ++i) {
        double off = 0.5 * h * abs_[i];
        double w = 0.5 * h * wts[i];
        if (abs_[i] == 0.0) {
          xs.push_back(c);
          ws.push_back(w);
        } else {
          xs.push_back(c - off);
          ws.push_back(w);
          xs.push_back(c + off);
          ws.push_back(w);
        }
      }
    }
  }
  nodes = Eigen::Map<Eigen::VectorXd>(xs.data(), Eigen::Index(xs.size()));
  weights = Eigen::Map<Eigen::VectorXd>(ws.data(), Eigen::Index(ws.size()));
}

}  // namespace

void validate_profile(const SplittingProfile& profile) {
  std::visit(overloaded{
                 [](const FlatEnds& p) { check_ramp(p, "flat_ends"); },
                 [](const Sinusoidal& p) { check_ramp(p, "sinusoidal"); },
                 [](const Linear& p) { check_ramp(p, "linear"); },
                 [](const Tabulated& t) {
                   if (t.samples.size() < 2) throw Error(ErrorCode::ConfigInvalid, "table needs >= 2 samples");
                   for (std::size_t i = 0; i < t.samples.size(); ++i) {
                     if (!std::isfinite(t.samples[i].first) || !std::isfinite(t.samples[i].second))
                       throw Error(ErrorCode::ConfigInvalid, "table has non-finite samples");
                     if (i > 0 && !(t.samples[i].first > t.samples[i - 1].first))
                       throw Error(ErrorCode::ConfigInvalid, "table x must be strictly increasing");
                   }
                 },
             },
             profile);
}

double profile_value(const SplittingProfile& profile, double x) {
  return std::visit(overloaded{
                        [x](const FlatEnds& p) {
                          if (x <= p.x_i) return p.E_i;
                          if (x >= p.x_f) return p.E_f;
                          return p.E_i + (p.E_f - p.E_i) * (x - p.x_i) / (p.x_f - p.x_i);
                        },
                        [x](const Sinusoidal& p) {
                          double s = std::sin(std::numbers::pi * (x - p.x_i) / (2.0 * (p.x_f - p.x_i)));
                          return p.E_i + (p.E_f - p.E_i) * s * s;
                        },
                        [x](const Linear& p) { return p.E_i + (p.E_f - p.E_i) * (x - p.x_i) / (p.x_f - p.x_i); },
                        [x](const Tabulated& t) { return tabulated_value(t, x); },
                    },
                    profile);
}

std::pair<double, double> profile_end_values(const SplittingProfile& profile) {
  return std::visit(overloaded{
                        [](const Tabulated& t) { return std::pair{t.samples.front().second, t.samples.back().second}; },
                        [](const auto& p) { return std::pair{p.E_i, p.E_f}; },
                    },
                    profile);
}

std::vector<double> profile_kinks(const SplittingProfile& profile) {
  return std::visit(overloaded{
                        [](const FlatEnds& p) { return std::vector<double>{p.x_i, p.x_f}; },
                        [](const Tabulated& t) {
                          std::vector<double> k;
                          for (const auto& s : t.samples) k.push_back(s.first);
                          return k;
                        },
                        [](const auto&) { return std::vector<double>{}; },
                    },
                    profile);
}

double galerkin_half_width(int dim) { return (std::sqrt(2.0 * dim) + 12.0) / std::numbers::sqrt2; }

OperatorMatrix function_of_position(const FockSpace& space, const std::function<double(double)>& f,
                                    std::span<const double> kinks, OperatorMethod method) {
  const int N = space.dim();
  Eigen::MatrixXd m;
  if (method == OperatorMethod::SpectralCalculus) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(N, N);
    for (int n = 1; n < N; ++n) x(n - 1, n) = x(n, n - 1) = 0.5 * std::sqrt(double(n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::EigensolverFailure, "position eigendecomposition failed");
    Eigen::VectorXd fx(N);
    for (int i = 0; i < N; ++i) fx[i] = f(es.eigenvalues()[i]);
    m = es.eigenvectors() * fx.asDiagonal() * es.eigenvectors().transpose();
  } else {
    // <m|f(X)|n> = int f(X) psi_m(X) psi_n(X) dX, psi_n(X) = 2^{1/4} phi_n(sqrt2 X)
    const double L = galerkin_half_width(N);
    const double panel = std::min(0.15, 2.4 / std::sqrt(double(N)));
    Eigen::VectorXd nodes, weights;
    composite_rule(-L, L, std::vector<double>(kinks.begin(), kinks.end()), panel, nodes, weights);
    Eigen::VectorXd fw(nodes.size());
    for (Eigen::Index k = 0; k < nodes.size(); ++k) fw[k] = f(nodes[k]) * weights[k] * std::numbers::sqrt2;
    Eigen::MatrixXd psi = hermite_function_table(N, std::numbers::sqrt2 * nodes);
    m = psi * fw.asDiagonal() * psi.transpose();
  }
  m = 0.5 * (m + m.transpose()).eval();
  return OperatorMatrix(m.cast<cplx>(), true);
}

OperatorMatrix profile_operator(const FockSpace& space, const SplittingProfile& profile, OperatorMethod method) {
  validate_profile(profile);
  // spectral calculus evaluates the table at eigenvalues of X and throws there if needed
  if (const auto* t = std::get_if<Tabulated>(&profile); t && method == OperatorMethod::Galerkin) {
    const double need = galerkin_half_width(space.dim());
    if (t->samples.front().first > -need || t->samples.back().first < need) {
      std::ostringstream msg;
      msg << "table must cover X in [" << -need << ", " << need << "] at dim " << space.dim();
      throw Error(ErrorCode::TabulatedOutOfRange, msg.str());
    }
  }
  auto kinks = profile_kinks(profile);
  return function_of_position(space, [&](double x) { return profile_value(profile, x); }, kinks, method);
}

JointHamiltonian joint_hamiltonian(const FockSpace& space, const SplittingProfile& profile, OperatorMethod method) {
  OperatorMatrix e = profile_operator(space, profile, method);
  ComplexMatrix hb = oscillator_energies(space).cast<cplx>().asDiagonal();
  return {OperatorMatrix(hb + e.entries, true), OperatorMatrix(hb - e.entries, true), profile, space};
}

}  // namespace aqc
