#pragma once

#include <vector>

#include "wildfire/resources.hpp"
#include "wildfire/towers.hpp"

namespace wildfire {

/// Broken-power-law constants for the preparedness score.
struct PerformanceParams {
  double beta = -1.0;  // realized as the -1 in the exponent beta / s
  double s = 2.0;
  double x_n = 270.0;
  double a = 5.0;
};

inline constexpr double kHelpBonusReward = 0.1;

/// Direction-aware remap of the normalized fire distance:
/// approaching fire maps [0,1] onto [0.5,0], receding onto [0.5,1].
/// Inputs outside [0,1] are clamped.
double remap_x(double raw, bool approaching);

/// F(x) = (1 + (x * 1000 / x_n)^a)^(beta / s); equals 1 at x = 0 and decays
/// toward 0 as x grows.
double performance(double x, const PerformanceParams& params = {});

/// Preparedness of one tower this step: 0 without an observed fire,
/// otherwise the performance of the remapped normalized fire distance.
double tower_performance(const LocalObservation& observation, double observation_radius,
                         bool approaching, const PerformanceParams& params = {});

/// Support-weighted payoff: sum over targets of allocation(agent, target)
/// times that tower's performance.
double egoistic_reward(int agent, const ResourceLedger& ledger,
                       const std::vector<double>& performances);

/// Mean performance over all towers, shared by every agent.
double collective_reward(const std::vector<double>& performances);

/// Per-step reward breakdown for all agents.
struct StepReward {
  std::vector<double> egoistic;
  double collective = 0.0;
  std::vector<double> bonus;

  double total(int agent) const { return egoistic[agent] + collective + bonus[agent]; }
};

}  // namespace wildfire
