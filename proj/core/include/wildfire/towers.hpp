#pragma once

#include <optional>
#include <vector>

#include "wildfire/fire.hpp"
#include "wildfire/geometry.hpp"
#include "wildfire/scenario.hpp"
#include "wildfire/weather.hpp"

namespace wildfire {

inline constexpr int kTowerCount = 9;
inline constexpr int kNeighborCount = 3;

struct Tower {
  int id = 0;
  Vec3 position;
  double observation_radius = 0.0;
};

/// Fixed 3x3 layout over the world extent; tower elevation is the terrain
/// height at its cell. For a 1000 m world the axis coordinates are
/// {167, 500, 833} and the observation radius 236 m (half spacing * sqrt 2,
/// rounded to whole meters so regional boundaries are exact).
struct TowerGrid {
  std::vector<Tower> towers;
};

TowerGrid make_tower_grid(const TerrainGrid& terrain);

/// Directed n-nearest-neighbor adjacency; ties by lower tower id.
struct NeighborGraph {
  std::vector<std::vector<int>> neighbors;  // out-edges, size n each

  bool is_neighbor(int tower, int candidate) const {
    for (int v : neighbors[tower]) {
      if (v == candidate) return true;
    }
    return false;
  }
};

/// Throws std::invalid_argument when fewer than n + 1 towers exist.
NeighborGraph build_neighborhoods(const TowerGrid& grid, int n = kNeighborCount);

/// The seven per-tower sensor scalars (closest observed fire as three).
struct LocalObservation {
  Vec3 cof_pos;             // world coordinates; zero sentinel when !cof_valid
  bool cof_valid = false;
  double cof_distance = 0;  // horizontal meters, only meaningful when valid
  double temp = 0.0;
  double hum = 0.0;
  double prep = 0.0;        // current support value at the tower
  double oc = 0.0;
};

/// Nearest burning tree with horizontal distance <= observation radius
/// (boundary inclusive); ties by lower tree index.
std::optional<int> closest_observed_fire(const Tower& tower, const FireState& fire,
                                         const ForestMap& forest);

LocalObservation observe_local(const Tower& tower, const WeatherState& weather,
                               const FireState& fire, const ForestMap& forest,
                               const GridGeometry& geom, double support_value);

}  // namespace wildfire
