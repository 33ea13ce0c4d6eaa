// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rislink {

struct CodebookEntry {
  double phase_rad = 0.0;
  double amplitude = 1.0;  ///< linear, in (0, 1]
};

/// The 2^k realisable reflection states of one element: phase grid plus the
/// per-state reflection amplitude, with phase-shift capability omega.
struct Codebook {
  int bits = 1;
  double capability_rad = 0.0;        ///< omega
  std::vector<CodebookEntry> entries;  ///< phases ascending, entries[0].phase == 0

  std::size_t size() const { return entries.size(); }
};

/// Smallest capability for which a k-bit grid reaches the full-circle
/// spacing: (2^k - 1)/2^k * 2 pi.
double sufficient_capability(int bits);

/// Shortfall of capability below the k-bit sufficient threshold:
/// max(0, (2^k - 1)/2^k * 2 pi - omega).
double capability_decrement(int bits, double capability_rad);

/// Uniform k-bit phase grid. Spacing is 2 pi / 2^k when the capability is
/// sufficient, omega / (2^k - 1) otherwise; both start at zero.
std::vector<double> quantized_phases(int bits, double capability_rad);

/// Pairs the quantized phase grid with per-state amplitudes. bits == 0 is the
/// degenerate single-state codebook. Amplitudes are linear in (0, 1].
Codebook make_codebook(int bits, double capability_rad, std::span<const double> amplitudes);

/// Same, with amplitudes given in dB (must be <= 0); converted via 10^(dB/20).
Codebook make_codebook_db(int bits, double capability_rad, std::span<const double> amplitudes_db);

/// One bias point of a measured element response.
struct MeasuredPoint {
  double voltage_v = 0.0;
  double phase_rad = 0.0;
  double amplitude = 1.0;  ///< linear
};

/// Measured element response, e.g. a varactor bias sweep. Rows ordered by
/// non-decreasing voltage.
struct MeasuredResponse {
  std::vector<MeasuredPoint> points;
  double frequency_ghz = 0.0;        ///< optional metadata
  double incident_angle_deg = 0.0;   ///< optional metadata
};

/// Parses the measured-response CSV format:
///   voltage,phase_deg,amplitude_db
/// with one row per bias point and optional "# key: value" metadata comments.
/// Amplitudes must be <= 0 dB; the voltage column must be non-decreasing.
MeasuredResponse parse_measured_response(std::istream& in);
MeasuredResponse load_measured_response(const std::string& path);

/// Builds a codebook by interpolating the measured response at the given
/// state voltages. Selected states are sorted by phase and re-referenced so
/// the minimum phase is zero; the capability is the maximum selected phase.
/// Amplitude interpolation happens in dB.
Codebook measured_codebook(const MeasuredResponse& response,
                           std::span<const double> state_voltages);
Codebook load_measured_codebook(const std::string& path,
                                std::span<const double> state_voltages);

}  // namespace rislink
