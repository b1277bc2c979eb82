#pragma once

#include <cstdint>
#include <vector>

#include "wildfire/geometry.hpp"

namespace wildfire {

/// Temperature field range in Celsius; keeps the 21 degree spread threshold
/// reachable from both sides.
inline constexpr double kTemperatureMin = 10.0;
inline constexpr double kTemperatureMax = 40.0;

/// Dynamic per-cell fields, all deterministic in (seed, t).
struct WeatherState {
  int grid_size = 0;
  Vec2 main_wind_direction;          // unit vector
  std::vector<Vec2> wind_field;      // m/s, observable texture only
  std::vector<double> overcast;      // [0, 1], exact zeros in clear regions
  std::vector<double> temperature;   // [kTemperatureMin, kTemperatureMax] Celsius
  std::vector<double> humidity;      // [0, 1]

  double overcast_at(const GridGeometry& geom, double x, double z) const {
    return overcast[geom.cell_index(x, z)];
  }
  double temperature_at(const GridGeometry& geom, double x, double z) const {
    return temperature[geom.cell_index(x, z)];
  }
  double humidity_at(const GridGeometry& geom, double x, double z) const {
    return humidity[geom.cell_index(x, z)];
  }
};

/// Samples every field from seeded gradient noise with t as the third
/// coordinate, so consecutive steps stay close.
WeatherState generate_weather(std::uint64_t seed, int t, const GridGeometry& geom);

}  // namespace wildfire
