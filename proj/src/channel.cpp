// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include "rislink/channel.hpp"

#include <cmath>

#include "rislink/errors.hpp"

namespace rislink {

namespace {

// TR 38.901 Table 7.4.1-1, UMa, at the default heights. The input distance is
// the 3-D link distance; its ground projection is checked against the model's
// validity range.
constexpr double kUmaSiteHeight = 25.0;      // m
constexpr double kUmaTerminalHeight = 1.5;   // m
constexpr double kUmaEffectiveEnv = 1.0;     // m
constexpr double kUmaMin2d = 10.0;           // m
constexpr double kUmaMax2d = 5000.0;         // m

double uma_nlos_pathloss_db(double distance_m, double frequency_hz, bool* clamped) {
  const double dz = kUmaSiteHeight - kUmaTerminalHeight;
  const double d2d_sq = distance_m * distance_m - dz * dz;
  double d2d = d2d_sq > 0.0 ? std::sqrt(d2d_sq) : 0.0;
  bool was_clamped = false;
  if (d2d < kUmaMin2d) {
    d2d = kUmaMin2d;
    was_clamped = true;
  } else if (d2d > kUmaMax2d) {
    d2d = kUmaMax2d;
    was_clamped = true;
  }
  const double d3d = std::sqrt(d2d * d2d + dz * dz);
  const double fc_ghz = frequency_hz / 1e9;
  const double breakpoint = 4.0 * (kUmaSiteHeight - kUmaEffectiveEnv) *
                            (kUmaTerminalHeight - kUmaEffectiveEnv) * frequency_hz /
                            kSpeedOfLight;
  double pl_los;
  if (d2d <= breakpoint) {
    pl_los = 28.0 + 22.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz);
  } else {
    pl_los = 28.0 + 40.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz) -
             9.0 * std::log10(breakpoint * breakpoint + dz * dz);
  }
  const double pl_nlos = 13.54 + 39.08 * std::log10(d3d) + 20.0 * std::log10(fc_ghz) -
                         0.6 * (kUmaTerminalHeight - 1.5);
  if (clamped) *clamped = was_clamped;
  return std::max(pl_los, pl_nlos);
}

}  // namespace

double nlos_gain(const NlosGain& gain, double distance_m, double wavelength_m, bool* clamped) {
  if (clamped) *clamped = false;
  if (!(distance_m > 0.0)) throw ConfigError("nlos_gain: distance must be positive");
  if (gain.model == NlosGainModel::kFixed) {
    if (!(gain.fixed > 0.0) || gain.fixed > 1.0)
      throw ConfigError("nlos_gain: fixed gain must be in (0, 1]");
    return gain.fixed;
  }
  if (!(wavelength_m > 0.0)) throw ConfigError("nlos_gain: wavelength must be positive");
  const double pl_db = uma_nlos_pathloss_db(distance_m, kSpeedOfLight / wavelength_m, clamped);
  return std::pow(10.0, -pl_db / 20.0);
}

NlosPair nlos_components(const SceneGeometry& scene, const RicianConfig& rician, Rng& rng) {
  const std::size_t count = scene.element_count();
  const double gain_h = nlos_gain(rician.nlos, scene.bs_distances_m[0], scene.config.wavelength_m);
  const double gain_f =
      nlos_gain(rician.nlos, scene.user_distances_m[0], scene.config.wavelength_m);

  NlosPair nlos;
  nlos.h.resize(count);
  nlos.f.resize(count);
  for (std::size_t m = 0; m < count; ++m) nlos.h[m] = gain_h * rng.complex_gaussian();
  for (std::size_t m = 0; m < count; ++m) nlos.f[m] = gain_f * rng.complex_gaussian();
  return nlos;
}

ChannelPair assemble_channel(const LosPair& los, const NlosPair& nlos,
                             const RicianConfig& rician) {
  if (los.h.size() != nlos.h.size() || los.f.size() != nlos.f.size() ||
      los.h.size() != los.f.size())
    throw ConfigError("assemble_channel: component length mismatch");
  if (!(rician.k1 >= 0.0) || !(rician.k2 >= 0.0))
    throw ConfigError("assemble_channel: Rician K factors must be non-negative");

  const std::size_t count = los.h.size();
  const double w1_los = std::sqrt(rician.k1 / (rician.k1 + 1.0));
  const double w1_nlos = std::sqrt(1.0 / (rician.k1 + 1.0));
  const double w2_los = std::sqrt(rician.k2 / (rician.k2 + 1.0));
  const double w2_nlos = std::sqrt(1.0 / (rician.k2 + 1.0));

  ChannelPair ch;
  ch.h_los = los.h;
  ch.f_los = los.f;
  ch.h_nlos = nlos.h;
  ch.f_nlos = nlos.f;
  ch.h.resize(count);
  ch.f.resize(count);
  for (std::size_t m = 0; m < count; ++m) {
    ch.h[m] = w1_los * los.h[m] + w1_nlos * nlos.h[m];
    ch.f[m] = w2_los * los.f[m] + w2_nlos * nlos.f[m];
  }
  return ch;
}

}  // namespace rislink
