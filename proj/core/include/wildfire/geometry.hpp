#pragma once

#include <cmath>

namespace wildfire {

/// Horizontal plane coordinates. The vertical axis is y, following the
/// (x, y-up, z) convention used throughout the simulator.
struct Vec2 {
  double x = 0.0;
  double z = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double horizontal_distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dz * dz);
}

inline double euclidean_distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Square world discretized into grid_size x grid_size cells.
struct GridGeometry {
  int grid_size = 100;
  double world_extent = 1000.0;

  double cell_size() const { return world_extent / grid_size; }

  int clamp_cell(int c) const {
    if (c < 0) return 0;
    if (c >= grid_size) return grid_size - 1;
    return c;
  }

  int cell_of(double coord) const {
    return clamp_cell(static_cast<int>(std::floor(coord / cell_size())));
  }

  /// Row-major flat index of the cell containing (x, z).
  int cell_index(double x, double z) const { return cell_of(z) * grid_size + cell_of(x); }

  double cell_center(int c) const { return (c + 0.5) * cell_size(); }
};

}  // namespace wildfire
