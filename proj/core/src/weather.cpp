#include "wildfire/weather.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wildfire/noise.hpp"
#include "wildfire/rng.hpp"

namespace wildfire {

namespace {

constexpr std::uint64_t kWindStream = 11;
constexpr std::uint64_t kOvercastStream = 12;
constexpr std::uint64_t kTemperatureStream = 13;
constexpr std::uint64_t kHumidityStream = 14;

// Spatial periods across a kilometer and a slow time axis.
constexpr double kSpatialFrequency = 3.0;
constexpr double kTimeFrequency = 0.02;
constexpr int kWeatherOctaves = 3;

// Fraction of the overcast noise domain mapped to exactly zero (clear sky),
// so the "overcast is zero" spread condition is reachable.
constexpr double kClearSkyQuantile = 0.25;

}  // namespace

WeatherState generate_weather(std::uint64_t seed, int t, const GridGeometry& geom) {
  if (t < 0) throw std::invalid_argument("time step must be >= 0");

  const GradientNoise wind_noise(derive_seed(seed, kWindStream));
  const GradientNoise overcast_noise(derive_seed(seed, kOvercastStream));
  const GradientNoise temperature_noise(derive_seed(seed, kTemperatureStream));
  const GradientNoise humidity_noise(derive_seed(seed, kHumidityStream));

  const double scale = kSpatialFrequency / geom.world_extent;
  const double tau = t * kTimeFrequency;

  WeatherState weather;
  weather.grid_size = geom.grid_size;
  const std::size_t cells = static_cast<std::size_t>(geom.grid_size) * geom.grid_size;
  weather.wind_field.resize(cells);
  weather.overcast.resize(cells);
  weather.temperature.resize(cells);
  weather.humidity.resize(cells);

  // One main direction per step, drifting with t.
  const double angle =
      2.0 * std::numbers::pi * wind_noise.fbm3(0.37, 0.61, t * 0.01, kWeatherOctaves, 0.5);
  weather.main_wind_direction = Vec2{std::cos(angle), std::sin(angle)};

  for (int row = 0; row < geom.grid_size; ++row) {
    const double z = geom.cell_center(row) * scale;
    for (int col = 0; col < geom.grid_size; ++col) {
      const double x = geom.cell_center(col) * scale;
      const std::size_t idx = static_cast<std::size_t>(row) * geom.grid_size + col;

      const double oc = overcast_noise.fbm3(x, z, tau, kWeatherOctaves, 0.5);
      weather.overcast[idx] =
          oc <= kClearSkyQuantile ? 0.0 : (oc - kClearSkyQuantile) / (1.0 - kClearSkyQuantile);

      weather.temperature[idx] =
          kTemperatureMin + (kTemperatureMax - kTemperatureMin) *
                                temperature_noise.fbm3(x, z, tau, kWeatherOctaves, 0.5);

      weather.humidity[idx] = humidity_noise.fbm3(x, z, tau, kWeatherOctaves, 0.5);

      // Local wind: main direction perturbed in heading and strength.
      const double swirl = wind_noise.fbm3(x, z, tau, kWeatherOctaves, 0.5) - 0.5;
      const double local_angle = angle + swirl * std::numbers::pi * 0.5;
      const double speed =
          2.0 + 8.0 * wind_noise.fbm3(x + 53.1, z + 17.9, tau, kWeatherOctaves, 0.5);
      weather.wind_field[idx] =
          Vec2{speed * std::cos(local_angle), speed * std::sin(local_angle)};
    }
  }
  return weather;
}

}  // namespace wildfire
