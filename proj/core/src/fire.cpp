#include "wildfire/fire.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wildfire {

namespace {

constexpr double kCosSpreadAngle = 0.7071067811865476;  // cos(45 deg)

}  // namespace

FireState FireState::initial(const ForestMap& forest) {
  FireState fire;
  fire.state.assign(forest.trees.size(), TreeState::kAlive);
  fire.burn_timer.assign(forest.trees.size(), 0);
  return fire;
}

void FireState::ignite(int tree_index, int t) {
  if (state[tree_index] != TreeState::kAlive) return;
  state[tree_index] = TreeState::kBurning;
  burn_timer[tree_index] = kBurnDurationSteps;
  burning.insert(std::lower_bound(burning.begin(), burning.end(), tree_index), tree_index);
  ignited_count += 1;
  if (ignition_step < 0) ignition_step = t;
}

TreeSpatialIndex::TreeSpatialIndex(const ForestMap& forest, double world_extent) {
  cells_ = std::max(1, static_cast<int>(std::ceil(world_extent / bucket_size_)));
  buckets_.resize(static_cast<std::size_t>(cells_) * cells_);
  for (int i = 0; i < static_cast<int>(forest.trees.size()); ++i) {
    const Vec3& p = forest.trees[i].position;
    const int cx = std::clamp(static_cast<int>(p.x / bucket_size_), 0, cells_ - 1);
    const int cz = std::clamp(static_cast<int>(p.z / bucket_size_), 0, cells_ - 1);
    buckets_[static_cast<std::size_t>(cz) * cells_ + cx].push_back(i);
  }
}

std::vector<int> TreeSpatialIndex::neighbors_within(const Vec3& pos, double radius,
                                                    const ForestMap& forest) const {
  std::vector<int> out;
  const int reach = static_cast<int>(std::ceil(radius / bucket_size_));
  const int cx = std::clamp(static_cast<int>(pos.x / bucket_size_), 0, cells_ - 1);
  const int cz = std::clamp(static_cast<int>(pos.z / bucket_size_), 0, cells_ - 1);
  for (int dz = -reach; dz <= reach; ++dz) {
    const int z = cz + dz;
    if (z < 0 || z >= cells_) continue;
    for (int dx = -reach; dx <= reach; ++dx) {
      const int x = cx + dx;
      if (x < 0 || x >= cells_) continue;
      for (int idx : buckets_[static_cast<std::size_t>(z) * cells_ + x]) {
        if (horizontal_distance(forest.trees[idx].position, pos) <= radius) {
          out.push_back(idx);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int select_ignition(const WeatherState& weather, const ForestMap& forest,
                    const GridGeometry& geom) {
  int best = -1;
  double best_score = -1.0;
  for (int i = 0; i < static_cast<int>(forest.trees.size()); ++i) {
    const Tree& tree = forest.trees[i];
    if (tree.state != TreeState::kAlive) continue;
    const double oc = weather.overcast_at(geom, tree.position.x, tree.position.z);
    const double temp = weather.temperature_at(geom, tree.position.x, tree.position.z);
    const double hum = weather.humidity_at(geom, tree.position.x, tree.position.z);
    const double temp_norm =
        std::clamp((temp - kTemperatureMin) / (kTemperatureMax - kTemperatureMin), 0.0, 1.0);
    const double score = (1.0 - oc) + temp_norm + (1.0 - hum);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  if (best < 0) throw std::runtime_error("select_ignition: no alive tree to ignite");
  return best;
}

double spread_probability(const Tree& source, const Tree& target, const WeatherState& weather,
                          const GridGeometry& geom, const SpreadRules& rules) {
  if (euclidean_distance(source.position, target.position) > kSpreadRangeMeters) {
    return 0.0;
  }
  int conditions = 0;

  // Wind condition uses the main direction against the horizontal target vector.
  const double dx = target.position.x - source.position.x;
  const double dz = target.position.z - source.position.z;
  const double norm = std::sqrt(dx * dx + dz * dz);
  if (norm > 0.0) {
    const double cosine =
        (weather.main_wind_direction.x * dx + weather.main_wind_direction.z * dz) / norm;
    if (cosine > kCosSpreadAngle) conditions += 1;
  }

  if (target.position.y > source.position.y) conditions += 1;

  const double temp = weather.temperature_at(geom, target.position.x, target.position.z);
  if (temp > kSpreadTemperatureCelsius) conditions += 1;

  const double hum = weather.humidity_at(geom, target.position.x, target.position.z);
  const bool humid = hum > kSpreadHumidityThreshold;
  if (rules.humidity_high_helps_spread ? humid : !humid) conditions += 1;

  const double oc = weather.overcast_at(geom, target.position.x, target.position.z);
  if (oc == 0.0) conditions += 1;

  return kSpreadProbabilityPerCondition * conditions;
}

void step_fire(FireState& fire, const ForestMap& forest, const TreeSpatialIndex& index,
               const WeatherState& weather, const GridGeometry& geom, const SpreadRules& rules,
               RandomStream& rng) {
  const std::vector<int> sources = fire.burning;  // snapshot: this step's spreaders
  std::vector<int> ignited;

  for (int src : sources) {
    const Tree& source = forest.trees[src];
    const std::vector<int> candidates =
        index.neighbors_within(source.position, kSpreadRangeMeters, forest);
    for (int tgt : candidates) {
      if (fire.state[tgt] != TreeState::kAlive) continue;
      const double p = spread_probability(source, forest.trees[tgt], weather, geom, rules);
      if (rng.bernoulli(p)) {
        fire.state[tgt] = TreeState::kBurning;
        fire.burn_timer[tgt] = kBurnDurationSteps;
        fire.ignited_count += 1;
        ignited.push_back(tgt);
      }
    }
  }

  // Only trees burning at entry age this step; fresh ignitions start next step.
  std::vector<int> survivors;
  survivors.reserve(sources.size());
  for (int src : sources) {
    fire.burn_timer[src] -= 1;
    if (fire.burn_timer[src] <= 0) {
      fire.state[src] = TreeState::kBurned;
      fire.burn_timer[src] = 0;
      fire.burned_count += 1;
    } else {
      survivors.push_back(src);
    }
  }

  std::sort(ignited.begin(), ignited.end());
  std::vector<int> next_burning;
  next_burning.reserve(survivors.size() + ignited.size());
  std::merge(survivors.begin(), survivors.end(), ignited.begin(), ignited.end(),
             std::back_inserter(next_burning));
  fire.burning = std::move(next_burning);
}

}  // namespace wildfire
