// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include "rislink/geometry.hpp"

#include <cmath>

#include "rislink/errors.hpp"

namespace rislink {

namespace {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Endpoint at the given azimuth and 3-D range; the vertical offset is taken
// out of the range before projecting onto the horizontal plane.
Vec3 link_endpoint(double range_m, double azimuth_rad, double height_offset_m) {
  const double ground = std::sqrt(range_m * range_m - height_offset_m * height_offset_m);
  return {ground * std::cos(azimuth_rad), ground * std::sin(azimuth_rad), height_offset_m};
}

}  // namespace

GridDims most_square_grid(std::size_t element_count) {
  GridDims dims{1, element_count};
  for (std::size_t r = 1; r * r <= element_count; ++r) {
    if (element_count % r == 0) dims = {r, element_count / r};
  }
  return dims;
}

SceneGeometry build_scene(const SceneConfig& cfg) {
  if (cfg.element_count == 0) throw ConfigError("scene: element count must be positive");
  if (!(cfg.pitch_h_m > 0.0) || !(cfg.pitch_v_m > 0.0))
    throw ConfigError("scene: element pitch must be positive");
  if (!(cfg.wavelength_m > 0.0)) throw ConfigError("scene: wavelength must be positive");
  if (!(cfg.antenna_gain > 0.0)) throw ConfigError("scene: antenna gain must be positive");
  if (!(cfg.path_loss_exponent >= 0.0))
    throw ConfigError("scene: path loss exponent must be non-negative");

  const double dz_bs = cfg.bs_height_m - cfg.ris_height_m;
  const double dz_user = cfg.user_height_m - cfg.ris_height_m;
  if (!(cfg.bs_distance_m > std::abs(dz_bs)))
    throw ConfigError("scene: BS distance must exceed the BS/RIS height offset");
  if (!(cfg.user_distance_m > std::abs(dz_user)))
    throw ConfigError("scene: user distance must exceed the user/RIS height offset");

  SceneGeometry scene;
  scene.config = cfg;
  scene.grid = most_square_grid(cfg.element_count);
  scene.bs_distances_m.resize(cfg.element_count);
  scene.user_distances_m.resize(cfg.element_count);

  const Vec3 bs = link_endpoint(cfg.bs_distance_m, cfg.bs_azimuth_rad, dz_bs);
  const Vec3 user = link_endpoint(cfg.user_distance_m, cfg.user_azimuth_rad, dz_user);

  const double x_mid = 0.5 * static_cast<double>(scene.grid.cols - 1);
  const double z_mid = 0.5 * static_cast<double>(scene.grid.rows - 1);
  for (std::size_t m = 0; m < cfg.element_count; ++m) {
    const std::size_t row = m / scene.grid.cols;
    const std::size_t col = m % scene.grid.cols;
    const Vec3 elem{(static_cast<double>(col) - x_mid) * cfg.pitch_h_m, 0.0,
                    (z_mid - static_cast<double>(row)) * cfg.pitch_v_m};
    scene.bs_distances_m[m] = distance(bs, elem);
    scene.user_distances_m[m] = distance(user, elem);
  }
  return scene;
}

LosPair los_components(const SceneGeometry& scene) {
  const auto& cfg = scene.config;
  const std::size_t count = scene.element_count();
  const double amp_h =
      std::sqrt(cfg.antenna_gain * std::pow(scene.bs_distances_m[0], -cfg.path_loss_exponent));
  const double amp_f = std::sqrt(std::pow(scene.user_distances_m[0], -cfg.path_loss_exponent));
  const double wave_number = kTwoPi / cfg.wavelength_m;

  LosPair los;
  los.h.resize(count);
  los.f.resize(count);
  for (std::size_t m = 0; m < count; ++m) {
    los.h[m] = std::polar(amp_h, -wave_number * scene.bs_distances_m[m]);
    los.f[m] = std::polar(amp_f, -wave_number * scene.user_distances_m[m]);
  }
  return los;
}

}  // namespace rislink
