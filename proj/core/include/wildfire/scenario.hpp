#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wildfire/geometry.hpp"

namespace wildfire {

/// Static environment parameters. Identical configs always produce
/// identical scenarios.
struct ScenarioConfig {
  std::uint64_t seed = 0;
  int difficulty = 1;  // in [1, 10]
  int grid_size = 100;
  double world_extent = 1000.0;  // meters per side

  GridGeometry geometry() const { return GridGeometry{grid_size, world_extent}; }
};

/// Terrain amplitude in meters per difficulty level.
inline constexpr double kHeightPerDifficulty = 20.0;
inline constexpr int kMaxDifficulty = 10;
/// Trees stop growing above this altitude: 60% of the tallest terrain the
/// difficulty scale can produce.
inline constexpr double kTreeLine = 0.6 * kHeightPerDifficulty * kMaxDifficulty;
/// One candidate tree site per this many meters in each direction.
inline constexpr double kTreeCellSize = 8.0;
/// Noise-space periods across the world extent.
inline constexpr double kTerrainNoiseFrequency = 4.0;

struct TerrainGrid {
  int grid_size = 0;
  double world_extent = 0.0;
  std::vector<double> heights;  // row-major, grid_size * grid_size, meters

  double at(int row, int col) const { return heights[row * grid_size + col]; }
  double at_position(double x, double z) const {
    const GridGeometry geom{grid_size, world_extent};
    return heights[geom.cell_index(x, z)];
  }
  double max_height() const;
};

enum class TreeState { kAlive, kBurning, kBurned };

struct Tree {
  Vec3 position;
  TreeState state = TreeState::kAlive;
  int burn_timer = 0;
};

struct ForestMap {
  std::vector<Tree> trees;
};

double terrain_amplitude(int difficulty);

/// Heightmap from seeded gradient noise scaled by the difficulty amplitude.
/// Throws std::invalid_argument for difficulty outside [1, 10].
TerrainGrid generate_terrain(const ScenarioConfig& config);

/// Tree placement: one candidate site per 8 m x 8 m cell, kept with
/// probability falling linearly from 1 at sea level to 0 at the tree line.
ForestMap place_forest(const TerrainGrid& terrain, const ScenarioConfig& config);

/// FNV-1a over the height bytes; pins a scenario file to its terrain.
std::string terrain_checksum(const TerrainGrid& terrain);

/// Versioned scenario pin file (JSON): config plus terrain checksum.
void save_scenario(const ScenarioConfig& config, const TerrainGrid& terrain,
                   const std::string& path);
/// Loads a pin file and re-derives the scenario, verifying the checksum.
/// Throws std::runtime_error on version or checksum mismatch.
ScenarioConfig load_scenario(const std::string& path);

}  // namespace wildfire
