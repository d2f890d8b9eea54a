#pragma once

#include <Eigen/Dense>

namespace aqc {

// Normalized Hermite functions phi_0..phi_{count-1} at q, with
// phi_n(q) = H_n(q) exp(-q^2/2) / sqrt(2^n n! sqrt(pi)).
// Three-term recurrence with running rescale, so large n and |q| neither
// overflow nor flush to zero early.
Eigen::VectorXd hermite_functions(int count, double q);

// Column j holds hermite_functions(count, q[j]).
Eigen::MatrixXd hermite_function_table(int count, const Eigen::VectorXd& q);

}  // namespace aqc
