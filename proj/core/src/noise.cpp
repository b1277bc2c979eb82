#include "wildfire/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wildfire/rng.hpp"

namespace wildfire {

namespace {

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }
double lerp(double a, double b, double t) { return a + t * (b - a); }

// 8 unit gradient directions for the 2-D lattice.
constexpr double kInvSqrt2 = 0.7071067811865475;
constexpr double kGrad2[8][2] = {
    {1.0, 0.0},
    {-1.0, 0.0},
    {0.0, 1.0},
    {0.0, -1.0},
    {kInvSqrt2, kInvSqrt2},
    {-kInvSqrt2, kInvSqrt2},
    {kInvSqrt2, -kInvSqrt2},
    {-kInvSqrt2, -kInvSqrt2},
};

// 12 unit gradients along cube edges for the 3-D lattice.
constexpr double kGrad3[12][3] = {
    {kInvSqrt2, kInvSqrt2, 0.0},  {-kInvSqrt2, kInvSqrt2, 0.0},
    {kInvSqrt2, -kInvSqrt2, 0.0}, {-kInvSqrt2, -kInvSqrt2, 0.0},
    {kInvSqrt2, 0.0, kInvSqrt2},  {-kInvSqrt2, 0.0, kInvSqrt2},
    {kInvSqrt2, 0.0, -kInvSqrt2}, {-kInvSqrt2, 0.0, -kInvSqrt2},
    {0.0, kInvSqrt2, kInvSqrt2},  {0.0, -kInvSqrt2, kInvSqrt2},
    {0.0, kInvSqrt2, -kInvSqrt2}, {0.0, -kInvSqrt2, -kInvSqrt2},
};

// Tight output bound for unit gradients is sqrt(n)/2 in n dims.
constexpr double kRange2 = 0.7071067811865476;
constexpr double kRange3 = 0.8660254037844386;

double dot2(const double g[2], double x, double y) { return g[0] * x + g[1] * y; }
double dot3(const double g[3], double x, double y, double z) {
  return g[0] * x + g[1] * y + g[2] * z;
}

int floor_int(double v) {
  const int i = static_cast<int>(v);
  return v < i ? i - 1 : i;
}

}  // namespace

GradientNoise::GradientNoise(std::uint64_t seed) {
  std::array<std::uint8_t, 256> table;
  std::iota(table.begin(), table.end(), 0);
  RandomStream rng(derive_seed(seed, 0x6e6f697365ULL));  // dedicated shuffle stream
  for (int i = 255; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(i + 1)));
    std::swap(table[i], table[j]);
  }
  for (int i = 0; i < 256; ++i) {
    perm_[i] = table[i];
    perm_[i + 256] = table[i];
  }
}

std::uint8_t GradientNoise::hash2(int xi, int yi) const {
  return perm_[perm_[xi & 255] + (yi & 255)];
}

std::uint8_t GradientNoise::hash3(int xi, int yi, int zi) const {
  return perm_[perm_[perm_[xi & 255] + (yi & 255)] + (zi & 255)];
}

double GradientNoise::sample2(double x, double y) const {
  const int x0 = floor_int(x);
  const int y0 = floor_int(y);
  const double fx = x - x0;
  const double fy = y - y0;
  const double u = fade(fx);
  const double v = fade(fy);

  const double n00 = dot2(kGrad2[hash2(x0, y0) & 7], fx, fy);
  const double n10 = dot2(kGrad2[hash2(x0 + 1, y0) & 7], fx - 1.0, fy);
  const double n01 = dot2(kGrad2[hash2(x0, y0 + 1) & 7], fx, fy - 1.0);
  const double n11 = dot2(kGrad2[hash2(x0 + 1, y0 + 1) & 7], fx - 1.0, fy - 1.0);

  const double value = lerp(lerp(n00, n10, u), lerp(n01, n11, u), v) / kRange2;
  return std::clamp(value, -1.0, 1.0);
}

double GradientNoise::sample3(double x, double y, double z) const {
  const int x0 = floor_int(x);
  const int y0 = floor_int(y);
  const int z0 = floor_int(z);
  const double fx = x - x0;
  const double fy = y - y0;
  const double fz = z - z0;
  const double u = fade(fx);
  const double v = fade(fy);
  const double w = fade(fz);

  auto corner = [&](int dx, int dy, int dz) {
    const double gx = fx - dx;
    const double gy = fy - dy;
    const double gz = fz - dz;
    return dot3(kGrad3[hash3(x0 + dx, y0 + dy, z0 + dz) % 12], gx, gy, gz);
  };

  const double x00 = lerp(corner(0, 0, 0), corner(1, 0, 0), u);
  const double x10 = lerp(corner(0, 1, 0), corner(1, 1, 0), u);
  const double x01 = lerp(corner(0, 0, 1), corner(1, 0, 1), u);
  const double x11 = lerp(corner(0, 1, 1), corner(1, 1, 1), u);
  const double value = lerp(lerp(x00, x10, v), lerp(x01, x11, v), w) / kRange3;
  return std::clamp(value, -1.0, 1.0);
}

double GradientNoise::fbm2(double x, double y, int octaves, double persistence) const {
  double sum = 0.0;
  double amplitude = 1.0;
  double total_amplitude = 0.0;
  double frequency = 1.0;
  for (int o = 0; o < octaves; ++o) {
    // Per-octave offset decorrelates octave lattices.
    const double offset = 31.7 * o;
    sum += amplitude * sample2(x * frequency + offset, y * frequency + offset);
    total_amplitude += amplitude;
    amplitude *= persistence;
    frequency *= 2.0;
  }
  return std::clamp(0.5 * (sum / total_amplitude + 1.0), 0.0, 1.0);
}

double GradientNoise::fbm3(double x, double y, double z, int octaves, double persistence) const {
  double sum = 0.0;
  double amplitude = 1.0;
  double total_amplitude = 0.0;
  double frequency = 1.0;
  for (int o = 0; o < octaves; ++o) {
    const double offset = 31.7 * o;
    sum += amplitude *
           sample3(x * frequency + offset, y * frequency + offset, z * frequency + offset);
    total_amplitude += amplitude;
    amplitude *= persistence;
    frequency *= 2.0;
  }
  return std::clamp(0.5 * (sum / total_amplitude + 1.0), 0.0, 1.0);
}

double sample_noise(double x, double y, std::uint64_t seed) {
  const GradientNoise noise(seed);
  return noise.fbm2(x, y, kNoiseOctaves, kNoisePersistence);
}

}  // namespace wildfire
