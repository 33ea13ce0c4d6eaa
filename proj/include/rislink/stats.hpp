// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace rislink {

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
  bool defined = false;  ///< false when fewer than 2 samples
};

MeanStderr mean_stderr(std::span<const double> samples);

/// Least-squares slope of y (dB) against log10(x): dB per decade.
/// Needs at least 3 points.
double fit_slope_db_per_decade(std::span<const double> x, std::span<const double> y_db);

/// First x where the curve drops `drop_db` below its first point, linearly
/// interpolated between grid points; std::nullopt when the drop is never
/// reached. The curve must be monotone over the bracketing region.
std::optional<double> find_drop_crossing(std::span<const double> x, std::span<const double> y_db,
                                         double drop_db);

/// FNV-1a, 64-bit.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::string& path);

}  // namespace rislink
