#pragma once

#include <array>

namespace aqc {

// Residuals of the six ladder-operator exponential identities used for the
// squeezed-state Gibbs map. Each side is built as a dense matrix in a padded
// workspace (padding * dim levels, extended precision) and compared on the
// lowest dim/2 levels, where truncation of the unbounded operators does not reach.
struct IdentityReport {
  int dim;
  int workspace;
  double m;
  double n;
  std::array<double, 6> residual;  // max |L - R| / max(1, max |R|) on the block
  std::array<double, 6> absolute;  // max |L - R| on the block

  double max_residual() const;
};

IdentityReport identity_oracle(int dim, double m, double n, int padding = 4);

}  // namespace aqc
