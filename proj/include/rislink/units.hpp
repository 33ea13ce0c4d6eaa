// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>

namespace rislink {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Field quantities convert with 20*log10, power quantities with 10*log10.
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }
inline double amplitude_to_db(double amplitude) { return 20.0 * std::log10(amplitude); }
inline double db_to_power(double db) { return std::pow(10.0, db / 10.0); }
inline double power_to_db(double power) { return 10.0 * std::log10(power); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

/// Wraps an angle to [0, 2*pi).
inline double wrap_angle(double rad) {
  double r = std::fmod(rad, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod can round back up to the period
  return r;
}

}  // namespace rislink
