#pragma once

#include <array>
#include <cstdint>

namespace wildfire {

/// Seeded classic gradient (Perlin-style) lattice noise in 2-D and 3-D.
///
/// A generator owns one shuffled permutation table, so construct once per
/// field and sample many times. Single-octave samples are normalized to
/// [-1, 1]; the fbm variants stack octaves and remap to [0, 1].
class GradientNoise {
 public:
  explicit GradientNoise(std::uint64_t seed);

  double sample2(double x, double y) const;
  double sample3(double x, double y, double z) const;

  double fbm2(double x, double y, int octaves, double persistence) const;
  double fbm3(double x, double y, double z, int octaves, double persistence) const;

 private:
  std::uint8_t hash2(int xi, int yi) const;
  std::uint8_t hash3(int xi, int yi, int zi) const;

  std::array<std::uint8_t, 512> perm_;
};

/// Point query with the project-default 4 octaves / 0.5 persistence.
/// Deterministic in (x, y, seed); output in [0, 1].
double sample_noise(double x, double y, std::uint64_t seed);

inline constexpr int kNoiseOctaves = 4;
inline constexpr double kNoisePersistence = 0.5;

}  // namespace wildfire
