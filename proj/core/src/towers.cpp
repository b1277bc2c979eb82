#include "wildfire/towers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wildfire {

TowerGrid make_tower_grid(const TerrainGrid& terrain) {
  const double extent = terrain.world_extent;
  const double spacing = extent / 3.0;
  const double radius = std::round(spacing * std::numbers::sqrt2 / 2.0);

  TowerGrid grid;
  grid.towers.reserve(kTowerCount);
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      Tower tower;
      tower.id = row * 3 + col;
      const double x = std::round(extent * (2 * col + 1) / 6.0);
      const double z = std::round(extent * (2 * row + 1) / 6.0);
      tower.position = Vec3{x, terrain.at_position(x, z), z};
      tower.observation_radius = radius;
      grid.towers.push_back(tower);
    }
  }
  return grid;
}

NeighborGraph build_neighborhoods(const TowerGrid& grid, int n) {
  const int count = static_cast<int>(grid.towers.size());
  if (count < n + 1) {
    throw std::invalid_argument("build_neighborhoods: need at least n + 1 towers");
  }
  NeighborGraph graph;
  graph.neighbors.resize(count);
  for (int i = 0; i < count; ++i) {
    std::vector<int> order;
    order.reserve(count - 1);
    for (int j = 0; j < count; ++j) {
      if (j != i) order.push_back(j);
    }
    const Vec3& here = grid.towers[i].position;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = horizontal_distance(grid.towers[a].position, here);
      const double db = horizontal_distance(grid.towers[b].position, here);
      if (da != db) return da < db;
      return a < b;
    });
    graph.neighbors[i].assign(order.begin(), order.begin() + n);
  }
  return graph;
}

std::optional<int> closest_observed_fire(const Tower& tower, const FireState& fire,
                                         const ForestMap& forest) {
  int best = -1;
  double best_distance = 0.0;
  for (int idx : fire.burning) {
    const double d = horizontal_distance(forest.trees[idx].position, tower.position);
    if (d > tower.observation_radius) continue;
    if (best < 0 || d < best_distance) {
      best = idx;
      best_distance = d;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

LocalObservation observe_local(const Tower& tower, const WeatherState& weather,
                               const FireState& fire, const ForestMap& forest,
                               const GridGeometry& geom, double support_value) {
  LocalObservation obs;
  obs.temp = weather.temperature_at(geom, tower.position.x, tower.position.z);
  obs.hum = weather.humidity_at(geom, tower.position.x, tower.position.z);
  obs.oc = weather.overcast_at(geom, tower.position.x, tower.position.z);
  obs.prep = support_value;
  if (const auto tree = closest_observed_fire(tower, fire, forest)) {
    obs.cof_valid = true;
    obs.cof_pos = forest.trees[*tree].position;
    obs.cof_distance = horizontal_distance(obs.cof_pos, tower.position);
  }
  return obs;
}

}  // namespace wildfire
