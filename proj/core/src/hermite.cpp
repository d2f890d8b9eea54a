#include "aqc/hermite.hpp"

#include <cmath>
#include <numbers>

namespace aqc {

namespace {
constexpr double kRescale = 1e100;
const double kLogRescale = std::log(kRescale);
}  // namespace

Eigen::VectorXd hermite_functions(int count, double q) {
  Eigen::VectorXd out(count);
  if (count == 0) return out;
  double log_scale = -0.5 * q * q - 0.25 * std::log(std::numbers::pi);
  double prev = 0.0;
  double cur = 1.0;
  out[0] = std::exp(log_scale);
  for (int n = 0; n + 1 < count; ++n) {
    double next = std::sqrt(2.0 / (n + 1)) * q * cur - std::sqrt(double(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += kLogRescale;
    }
    out[n + 1] = cur == 0.0 ? 0.0 : std::copysign(std::exp(log_scale + std::log(std::abs(cur))), cur);
  }
  return out;
}

Eigen::MatrixXd hermite_function_table(int count, const Eigen::VectorXd& q) {
  Eigen::MatrixXd table(count, q.size());
  for (Eigen::Index j = 0; j < q.size(); ++j) table.col(j) = hermite_functions(count, q[j]);
  return table;
}

}  // namespace aqc
