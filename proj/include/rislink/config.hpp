// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rislink/montecarlo.hpp"

namespace rislink {

/// One codebook in an experiment config: either an explicit phase grid with
/// per-state amplitudes, or two-plus state voltages into a measured-response
/// CSV.
struct CodebookConfig {
  std::string label;
  double value = 0.0;  ///< sweep value when the codebook set is the variable
  int bits = 2;
  double omega_deg = 360.0;
  std::vector<double> amplitudes_db;
  std::string measured_csv;            ///< path; non-empty selects the measured route
  std::vector<double> state_voltages;
};

/// Human-facing experiment description (degrees, dBm, GHz); JSON round-trips
/// losslessly. to_spec() converts to the linear-unit ExperimentSpec.
struct ExperimentConfig {
  // scene
  double bs_distance_m = 90.0;
  double user_distance_m = 70.0;
  double bs_azimuth_deg = 45.0;
  double user_azimuth_deg = 45.0;
  double ris_height_m = 30.0;
  double bs_height_m = 25.0;
  double user_height_m = 1.5;
  std::size_t elements = 4096;
  double pitch_h_m = 0.05;
  double pitch_v_m = 0.05;
  double carrier_ghz = 2.6;
  double path_loss_exponent = 2.0;
  double antenna_gain_db = 0.0;
  // channel
  double k1 = 4.0;  ///< linear
  double k2 = 4.0;
  std::string nlos_model = "uma_nlos";  ///< "uma_nlos" | "fixed"
  double nlos_fixed_db = 0.0;           ///< amplitude dB for the fixed model
  // power
  double transmit_dbm = 20.0;
  double noise_dbm = -90.0;  ///< annotation only; never enters the power math
  // experiment
  std::vector<CodebookConfig> codebooks;
  std::vector<std::string> methods{"group_query"};
  std::string sweep_variable = "decrement_deg";
  std::vector<double> grid;
  int trials = 2000;
  std::uint64_t seed = 1;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

SceneConfig scene_from_config(const ExperimentConfig& config);
RicianConfig rician_from_config(const ExperimentConfig& config);

/// Builds the runnable spec: loads measured codebooks, parses method and
/// sweep-variable names, validates the grid. Throws ConfigError.
ExperimentSpec to_spec(const ExperimentConfig& config);

}  // namespace rislink
