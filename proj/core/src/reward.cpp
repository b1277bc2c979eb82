#include "wildfire/reward.hpp"

#include <algorithm>
#include <cmath>

namespace wildfire {

double remap_x(double raw, bool approaching) {
  raw = std::clamp(raw, 0.0, 1.0);
  return approaching ? 0.5 - 0.5 * raw : 0.5 + 0.5 * raw;
}

double performance(double x, const PerformanceParams& params) {
  const double scaled = x * 1000.0 / params.x_n;
  return std::pow(1.0 + std::pow(scaled, params.a), params.beta / params.s);
}

double tower_performance(const LocalObservation& observation, double observation_radius,
                         bool approaching, const PerformanceParams& params) {
  if (!observation.cof_valid) return 0.0;
  const double raw = observation.cof_distance / observation_radius;
  return performance(remap_x(raw, approaching), params);
}

double egoistic_reward(int agent, const ResourceLedger& ledger,
                       const std::vector<double>& performances) {
  double sum = 0.0;
  for (int target = 0; target < ledger.tower_count(); ++target) {
    sum += ledger.allocation(agent, target) * performances[target];
  }
  return sum;
}

double collective_reward(const std::vector<double>& performances) {
  double sum = 0.0;
  for (double p : performances) sum += p;
  return sum / static_cast<double>(performances.size());
}

}  // namespace wildfire
