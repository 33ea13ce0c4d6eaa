// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "rislink/units.hpp"

namespace rislink {

struct GridDims {
  std::size_t rows = 1;
  std::size_t cols = 1;
};

/// Most-square rows x cols factorisation of the element count (rows <= cols).
GridDims most_square_grid(std::size_t element_count);

/// Physical layout of one BS -> RIS -> user link. The array is a planar
/// rectangular grid centred on the origin, lying in the x-z plane; azimuths
/// are measured in the horizontal plane from the array's x axis, so 90 deg is
/// broadside. Heights place the endpoints above or below the array centre;
/// the configured link distances are full 3-D distances.
struct SceneConfig {
  double bs_distance_m = 90.0;    ///< BS to array centre (3-D)
  double user_distance_m = 70.0;  ///< user to array centre (3-D)
  double bs_azimuth_rad = deg2rad(45.0);
  double user_azimuth_rad = deg2rad(45.0);
  double ris_height_m = 30.0;
  double bs_height_m = 25.0;
  double user_height_m = 1.5;
  std::size_t element_count = 4096;
  double pitch_h_m = 0.05;
  double pitch_v_m = 0.05;
  double wavelength_m = kSpeedOfLight / 2.6e9;
  double path_loss_exponent = 2.0;
  double antenna_gain = 1.0;  ///< linear
};

struct SceneGeometry {
  SceneConfig config;
  GridDims grid;
  std::vector<double> bs_distances_m;    ///< per-element BS distance
  std::vector<double> user_distances_m;  ///< per-element user distance

  std::size_t element_count() const { return bs_distances_m.size(); }
};

/// Builds the scene: element grid centred on the array origin (row-major,
/// row 0 at the top), exact Euclidean per-element distances to both
/// endpoints. Throws ConfigError on non-positive dimensions.
SceneGeometry build_scene(const SceneConfig& config);

struct LosPair {
  std::vector<std::complex<double>> h;  ///< BS -> RIS
  std::vector<std::complex<double>> f;  ///< RIS -> user
};

/// Deterministic LoS components. Per-element amplitude uses the first
/// element's distance (common path loss across the aperture); per-element
/// phase uses the exact distance:
///   h[m] = sqrt(Ga * D_1^-alpha) * exp(-j 2 pi D_m / lambda)
///   f[m] = sqrt(d_1^-alpha)      * exp(-j 2 pi d_m / lambda)
LosPair los_components(const SceneGeometry& scene);

}  // namespace rislink
