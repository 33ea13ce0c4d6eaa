// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rislink/config.hpp"

namespace rislink {

struct RunOptions {
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::size_t> elements;
  std::optional<std::string> method;
  std::optional<std::string> channels;      ///< fig4: restrict to one channel condition
  std::optional<std::string> measured_csv;  ///< fig13-replay: element response file
};

struct ManifestFile {
  std::string name;
  std::string fnv1a64_hex;
};

/// Record of one run: every emitted file with its hash, the effective seed
/// and trial count, derived scalars (slope fits, 3 dB crossings), and an echo
/// of the executed configs. Written last, as manifest.json.
struct RunManifest {
  std::string target;
  std::uint64_t seed = 0;
  int trials = 0;
  double noise_dbm = 0.0;
  std::string spec_hash_hex;
  std::vector<ManifestFile> files;
  nlohmann::json extras;
  nlohmann::json config_echo;
};

std::vector<std::string> preset_names();

/// Executes a named preset or a JSON experiment config file. Emits one or
/// more CSVs plus manifest.json into options.out_dir.
RunManifest run_named(const std::string& target, const RunOptions& options);

/// Built-in sample of the measured element response format (bias sweep of a
/// 2.6 GHz varactor-tuned element); used by fig13-replay when no file is
/// given, and shipped verbatim as data/measured_2g6_example.csv.
extern const char* const kSampleMeasuredResponseCsv;

}  // namespace rislink
