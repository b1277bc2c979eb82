#pragma once

#include <span>
#include <vector>

namespace wildfire {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values, value-regression targets
};

/// Generalized advantage estimation over one trajectory segment.
/// `bootstrap_value` is V of the state following the last entry: zero for a
/// terminal boundary, the critic's estimate for a time-horizon cut.
/// Throws std::invalid_argument when rewards and values disagree in length.
GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      double bootstrap_value, double gamma, double lambda);

}  // namespace wildfire
