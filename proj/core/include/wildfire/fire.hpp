#pragma once

#include <vector>

#include "wildfire/geometry.hpp"
#include "wildfire/rng.hpp"
#include "wildfire/scenario.hpp"
#include "wildfire/weather.hpp"

namespace wildfire {

inline constexpr double kSpreadRangeMeters = 10.0;
inline constexpr int kBurnDurationSteps = 10;
inline constexpr double kSpreadProbabilityPerCondition = 0.2;
inline constexpr double kSpreadWindAngleDegrees = 45.0;
inline constexpr double kSpreadTemperatureCelsius = 21.0;
inline constexpr double kSpreadHumidityThreshold = 0.5;

struct SpreadRules {
  /// Verbatim rule: humidity above 50% raises spread probability. Set false
  /// to invert the comparison (physically intuitive variant).
  bool humidity_high_helps_spread = true;
};

/// Dynamic per-tree fire state, aligned with ForestMap::trees by index.
struct FireState {
  std::vector<TreeState> state;
  std::vector<int> burn_timer;
  std::vector<int> burning;  // ascending tree indices currently burning
  int ignition_step = -1;
  int ignited_count = 0;
  int burned_count = 0;

  static FireState initial(const ForestMap& forest);
  bool any_burning() const { return !burning.empty(); }
  void ignite(int tree_index, int t);
};

/// Uniform bucket grid over tree positions; bucket side equals the spread
/// range so a 3x3 neighborhood covers every candidate.
class TreeSpatialIndex {
 public:
  TreeSpatialIndex(const ForestMap& forest, double world_extent);

  /// Tree indices within `radius` horizontal meters of `pos`, ascending.
  std::vector<int> neighbors_within(const Vec3& pos, double radius,
                                    const ForestMap& forest) const;

 private:
  int cells_ = 0;
  double bucket_size_ = kSpreadRangeMeters;
  std::vector<std::vector<int>> buckets_;
};

/// Ignition site: alive tree maximizing (1 - overcast) + temp_norm + (1 - humidity)
/// at its cell; ties go to the lowest tree index.
/// Throws std::runtime_error when the forest has no alive tree.
int select_ignition(const WeatherState& weather, const ForestMap& forest,
                    const GridGeometry& geom);

/// Probability in {0, 0.2, ..., 1.0} that fire jumps from source to target
/// this step. Zero beyond kSpreadRangeMeters (3-D tree distance); otherwise
/// 0.2 per true condition: wind angle < 45 deg, target higher, target cell
/// above 21 C, humid per SpreadRules, overcast exactly zero.
double spread_probability(const Tree& source, const Tree& target, const WeatherState& weather,
                          const GridGeometry& geom, const SpreadRules& rules);

/// One fire step: every tree burning at entry attempts one Bernoulli draw per
/// alive tree in range (ascending source then target index), newly ignited
/// trees start at kBurnDurationSteps, and entry-burning timers decrement with
/// expired trees moving to burned.
void step_fire(FireState& fire, const ForestMap& forest, const TreeSpatialIndex& index,
               const WeatherState& weather, const GridGeometry& geom, const SpreadRules& rules,
               RandomStream& rng);

}  // namespace wildfire
