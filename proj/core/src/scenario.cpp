#include "wildfire/scenario.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "wildfire/noise.hpp"
#include "wildfire/rng.hpp"

namespace wildfire {

namespace {

constexpr std::uint64_t kTerrainStream = 1;
constexpr std::uint64_t kForestStream = 2;
constexpr int kScenarioFormatVersion = 1;

void validate(const ScenarioConfig& config) {
  if (config.difficulty < 1 || config.difficulty > kMaxDifficulty) {
    throw std::invalid_argument("difficulty must be in [1, 10]");
  }
  if (config.grid_size <= 0 || config.world_extent <= 0.0) {
    throw std::invalid_argument("grid_size and world_extent must be positive");
  }
}

}  // namespace

double TerrainGrid::max_height() const {
  return heights.empty() ? 0.0 : *std::max_element(heights.begin(), heights.end());
}

double terrain_amplitude(int difficulty) { return kHeightPerDifficulty * difficulty; }

TerrainGrid generate_terrain(const ScenarioConfig& config) {
  validate(config);
  const GridGeometry geom = config.geometry();
  const GradientNoise noise(derive_seed(config.seed, kTerrainStream));
  const double scale = kTerrainNoiseFrequency / config.world_extent;
  const double amplitude = terrain_amplitude(config.difficulty);

  TerrainGrid terrain;
  terrain.grid_size = config.grid_size;
  terrain.world_extent = config.world_extent;
  terrain.heights.resize(static_cast<std::size_t>(config.grid_size) * config.grid_size);
  for (int row = 0; row < config.grid_size; ++row) {
    const double z = geom.cell_center(row);
    for (int col = 0; col < config.grid_size; ++col) {
      const double x = geom.cell_center(col);
      const double base = noise.fbm2(x * scale, z * scale, kNoiseOctaves, kNoisePersistence);
      terrain.heights[row * config.grid_size + col] = base * amplitude;
    }
  }
  return terrain;
}

ForestMap place_forest(const TerrainGrid& terrain, const ScenarioConfig& config) {
  validate(config);
  RandomStream rng(derive_seed(config.seed, kForestStream));
  const int cells = static_cast<int>(config.world_extent / kTreeCellSize);

  ForestMap forest;
  forest.trees.reserve(static_cast<std::size_t>(cells) * cells / 2);
  for (int row = 0; row < cells; ++row) {
    for (int col = 0; col < cells; ++col) {
      const double cx = (col + 0.5) * kTreeCellSize;
      const double cz = (row + 0.5) * kTreeCellSize;
      const double height = terrain.at_position(cx, cz);
      const double keep = height >= kTreeLine ? 0.0 : 1.0 - height / kTreeLine;
      // Draw jitter unconditionally so the stream stays aligned per cell.
      const double jx = rng.uniform(-0.5, 0.5) * (kTreeCellSize - 1.0);
      const double jz = rng.uniform(-0.5, 0.5) * (kTreeCellSize - 1.0);
      const double accept = rng.uniform();
      if (accept >= keep) continue;
      const double x = cx + jx;
      const double z = cz + jz;
      Tree tree;
      tree.position = Vec3{x, terrain.at_position(x, z), z};
      forest.trees.push_back(tree);
    }
  }
  return forest;
}

std::string terrain_checksum(const TerrainGrid& terrain) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&hash](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      hash ^= bytes[i];
      hash *= 0x100000001b3ULL;
    }
  };
  feed(&terrain.grid_size, sizeof(terrain.grid_size));
  feed(terrain.heights.data(), terrain.heights.size() * sizeof(double));
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a:") + buf;
}

void save_scenario(const ScenarioConfig& config, const TerrainGrid& terrain,
                   const std::string& path) {
  nlohmann::json doc;
  doc["format"] = "wildfire-scenario";
  doc["version"] = kScenarioFormatVersion;
  doc["seed"] = config.seed;
  doc["difficulty"] = config.difficulty;
  doc["grid_size"] = config.grid_size;
  doc["world_extent"] = config.world_extent;
  doc["terrain_checksum"] = terrain_checksum(terrain);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << doc.dump(2) << "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  if (doc.value("format", "") != "wildfire-scenario" ||
      doc.value("version", 0) != kScenarioFormatVersion) {
    throw std::runtime_error("unsupported scenario file format/version: " + path);
  }
  ScenarioConfig config;
  config.seed = doc.at("seed").get<std::uint64_t>();
  config.difficulty = doc.at("difficulty").get<int>();
  config.grid_size = doc.at("grid_size").get<int>();
  config.world_extent = doc.at("world_extent").get<double>();
  const TerrainGrid terrain = generate_terrain(config);
  const std::string expected = doc.at("terrain_checksum").get<std::string>();
  if (terrain_checksum(terrain) != expected) {
    throw std::runtime_error("scenario checksum mismatch (generator changed?): " + path);
  }
  return config;
}

}  // namespace wildfire
