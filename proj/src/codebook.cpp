// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include "rislink/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rislink/errors.hpp"
#include "rislink/units.hpp"

namespace rislink {

namespace {

void check_bits_capability(int bits, double capability_rad) {
  if (bits < 1 || bits > 8) throw ConfigError("codebook: bits must be in [1, 8]");
  if (!(capability_rad > 0.0) || capability_rad > kTwoPi + 1e-12)
    throw ConfigError("codebook: capability must be in (0, 2*pi]");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

double sufficient_capability(int bits) {
  if (bits < 1 || bits > 8) throw ConfigError("codebook: bits must be in [1, 8]");
  const double n = static_cast<double>(std::size_t{1} << bits);
  return (n - 1.0) / n * kTwoPi;
}

double capability_decrement(int bits, double capability_rad) {
  check_bits_capability(bits, capability_rad);
  return std::max(0.0, sufficient_capability(bits) - capability_rad);
}

std::vector<double> quantized_phases(int bits, double capability_rad) {
  check_bits_capability(bits, capability_rad);
  const std::size_t n = std::size_t{1} << bits;
  const double step = capability_rad >= sufficient_capability(bits)
                          ? kTwoPi / static_cast<double>(n)
                          : capability_rad / static_cast<double>(n - 1);
  std::vector<double> phases(n);
  for (std::size_t i = 0; i < n; ++i) phases[i] = step * static_cast<double>(i);
  return phases;
}

Codebook make_codebook(int bits, double capability_rad, std::span<const double> amplitudes) {
  std::vector<double> phases;
  if (bits == 0) {
    // degenerate single-state element
    if (!(capability_rad > 0.0) || capability_rad > kTwoPi + 1e-12)
      throw ConfigError("codebook: capability must be in (0, 2*pi]");
    phases = {0.0};
  } else {
    phases = quantized_phases(bits, capability_rad);
  }
  if (amplitudes.size() != phases.size())
    throw ConfigError("codebook: amplitude list length must be 2^bits");

  Codebook cb;
  cb.bits = bits;
  cb.capability_rad = capability_rad;
  cb.entries.resize(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (!(amplitudes[i] > 0.0) || amplitudes[i] > 1.0)
      throw ConfigError("codebook: amplitudes must be in (0, 1]");
    cb.entries[i] = {phases[i], amplitudes[i]};
  }
  return cb;
}

Codebook make_codebook_db(int bits, double capability_rad,
                          std::span<const double> amplitudes_db) {
  std::vector<double> linear(amplitudes_db.size());
  for (std::size_t i = 0; i < amplitudes_db.size(); ++i) {
    if (amplitudes_db[i] > 0.0) throw ConfigError("codebook: amplitudes above 0 dB");
    linear[i] = db_to_amplitude(amplitudes_db[i]);
  }
  return make_codebook(bits, capability_rad, linear);
}

MeasuredResponse parse_measured_response(std::istream& in) {
  MeasuredResponse resp;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      // optional "# key: value" metadata
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        const std::string key = trim(line.substr(1, colon - 1));
        const std::string value = trim(line.substr(colon + 1));
        try {
          if (key == "frequency_ghz") resp.frequency_ghz = std::stod(value);
          if (key == "incident_angle_deg") resp.incident_angle_deg = std::stod(value);
        } catch (const std::exception&) {
          throw ConfigError("measured response: bad metadata value in '" + line + "'");
        }
      }
      continue;
    }
    if (!header_seen) {
      std::string compact;
      for (char c : line)
        if (c != ' ' && c != '\t') compact += c;
      if (compact != "voltage,phase_deg,amplitude_db")
        throw ConfigError("measured response: expected header voltage,phase_deg,amplitude_db");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    double values[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(row, field, ','))
        throw ConfigError("measured response: row with fewer than 3 fields: " + line);
      try {
        values[i] = std::stod(trim(field));
      } catch (const std::exception&) {
        throw ConfigError("measured response: non-numeric field in row: " + line);
      }
    }
    if (values[2] > 0.0)
      throw ConfigError("measured response: amplitude above 0 dB");
    resp.points.push_back({values[0], deg2rad(values[1]), db_to_amplitude(values[2])});
  }
  if (!header_seen) throw ConfigError("measured response: missing header");
  if (resp.points.size() < 2) throw ConfigError("measured response: needs at least 2 rows");
  for (std::size_t i = 1; i < resp.points.size(); ++i) {
    if (resp.points[i].voltage_v < resp.points[i - 1].voltage_v)
      throw ConfigError("measured response: voltage column must be non-decreasing");
  }
  return resp;
}

MeasuredResponse load_measured_response(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("measured response: cannot open " + path);
  return parse_measured_response(in);
}

Codebook measured_codebook(const MeasuredResponse& resp,
                           std::span<const double> state_voltages) {
  const std::size_t n = state_voltages.size();
  if (n < 2 || (n & (n - 1)) != 0)
    throw ConfigError("measured codebook: state count must be a power of two >= 2");

  struct State {
    double phase_rad, amplitude;
  };
  std::vector<State> states(n);
  const auto& pts = resp.points;
  for (std::size_t s = 0; s < n; ++s) {
    const double v = state_voltages[s];
    if (v < pts.front().voltage_v || v > pts.back().voltage_v)
      throw ConfigError("measured codebook: state voltage outside the measured range");
    std::size_t hi = 1;
    while (hi + 1 < pts.size() && pts[hi].voltage_v < v) ++hi;
    const auto& a = pts[hi - 1];
    const auto& b = pts[hi];
    const double span = b.voltage_v - a.voltage_v;
    // duplicate bias rows pass the left point through untouched
    const double t = span > 0.0 ? (v - a.voltage_v) / span : 0.0;
    const double amp_db =
        amplitude_to_db(a.amplitude) + t * (amplitude_to_db(b.amplitude) - amplitude_to_db(a.amplitude));
    states[s] = {a.phase_rad + t * (b.phase_rad - a.phase_rad), db_to_amplitude(amp_db)};
  }

  std::sort(states.begin(), states.end(),
            [](const State& a, const State& b) { return a.phase_rad < b.phase_rad; });
  const double reference = states.front().phase_rad;

  Codebook cb;
  cb.bits = 0;
  for (std::size_t v = n; v > 1; v >>= 1) ++cb.bits;
  cb.entries.resize(n);
  for (std::size_t s = 0; s < n; ++s)
    cb.entries[s] = {states[s].phase_rad - reference, states[s].amplitude};
  cb.capability_rad = cb.entries.back().phase_rad;
  if (!(cb.capability_rad > 0.0))
    throw ConfigError("measured codebook: selected states have identical phases");
  return cb;
}

Codebook load_measured_codebook(const std::string& path,
                                std::span<const double> state_voltages) {
  return measured_codebook(load_measured_response(path), state_voltages);
}

}  // namespace rislink
