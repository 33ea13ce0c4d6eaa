// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include "rislink/config.hpp"

#include <fstream>

#include "rislink/errors.hpp"
#include "rislink/units.hpp"

namespace rislink {

namespace {

using nlohmann::json;

double get_rician_k(const json& channel, const char* linear_key, const char* db_key,
                    double fallback) {
  if (channel.contains(db_key)) return db_to_power(channel.at(db_key).get<double>());
  if (channel.contains(linear_key)) return channel.at(linear_key).get<double>();
  return fallback;
}

}  // namespace

nlohmann::json config_to_json(const ExperimentConfig& c) {
  json scene{{"bs_distance_m", c.bs_distance_m},
             {"user_distance_m", c.user_distance_m},
             {"bs_azimuth_deg", c.bs_azimuth_deg},
             {"user_azimuth_deg", c.user_azimuth_deg},
             {"ris_height_m", c.ris_height_m},
             {"bs_height_m", c.bs_height_m},
             {"user_height_m", c.user_height_m},
             {"elements", c.elements},
             {"pitch_h_m", c.pitch_h_m},
             {"pitch_v_m", c.pitch_v_m},
             {"carrier_ghz", c.carrier_ghz},
             {"path_loss_exponent", c.path_loss_exponent},
             {"antenna_gain_db", c.antenna_gain_db}};
  json channel{{"k1", c.k1}, {"k2", c.k2}, {"nlos_model", c.nlos_model}};
  if (c.nlos_model == "fixed") channel["nlos_fixed_db"] = c.nlos_fixed_db;
  json codebooks = json::array();
  for (const auto& cb : c.codebooks) {
    json entry{{"label", cb.label}, {"value", cb.value}};
    if (!cb.measured_csv.empty()) {
      entry["measured_csv"] = cb.measured_csv;
      entry["state_voltages"] = cb.state_voltages;
    } else {
      entry["bits"] = cb.bits;
      entry["omega_deg"] = cb.omega_deg;
      entry["amplitudes_db"] = cb.amplitudes_db;
    }
    codebooks.push_back(entry);
  }
  return json{{"scene", scene},
              {"channel", channel},
              {"power", json{{"transmit_dbm", c.transmit_dbm}, {"noise_dbm", c.noise_dbm}}},
              {"codebooks", codebooks},
              {"methods", c.methods},
              {"sweep",
               json{{"variable", c.sweep_variable}, {"grid", c.grid}, {"trials", c.trials}}},
              {"seed", c.seed}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("scene")) {
      const auto& s = j.at("scene");
      c.bs_distance_m = s.value("bs_distance_m", c.bs_distance_m);
      c.user_distance_m = s.value("user_distance_m", c.user_distance_m);
      c.bs_azimuth_deg = s.value("bs_azimuth_deg", c.bs_azimuth_deg);
      c.user_azimuth_deg = s.value("user_azimuth_deg", c.user_azimuth_deg);
      c.ris_height_m = s.value("ris_height_m", c.ris_height_m);
      c.bs_height_m = s.value("bs_height_m", c.bs_height_m);
      c.user_height_m = s.value("user_height_m", c.user_height_m);
      c.elements = s.value("elements", c.elements);
      c.pitch_h_m = s.value("pitch_h_m", c.pitch_h_m);
      c.pitch_v_m = s.value("pitch_v_m", c.pitch_v_m);
      c.carrier_ghz = s.value("carrier_ghz", c.carrier_ghz);
      c.path_loss_exponent = s.value("path_loss_exponent", c.path_loss_exponent);
      c.antenna_gain_db = s.value("antenna_gain_db", c.antenna_gain_db);
    }
    if (j.contains("channel")) {
      const auto& ch = j.at("channel");
      c.k1 = get_rician_k(ch, "k1", "k1_db", c.k1);
      c.k2 = get_rician_k(ch, "k2", "k2_db", c.k2);
      c.nlos_model = ch.value("nlos_model", c.nlos_model);
      c.nlos_fixed_db = ch.value("nlos_fixed_db", c.nlos_fixed_db);
    }
    if (j.contains("power")) {
      c.transmit_dbm = j.at("power").value("transmit_dbm", c.transmit_dbm);
      c.noise_dbm = j.at("power").value("noise_dbm", c.noise_dbm);
    }
    for (const auto& entry : j.value("codebooks", json::array())) {
      CodebookConfig cb;
      cb.label = entry.value("label", std::string{});
      cb.value = entry.value("value", 0.0);
      cb.bits = entry.value("bits", cb.bits);
      cb.omega_deg = entry.value("omega_deg", cb.omega_deg);
      cb.amplitudes_db = entry.value("amplitudes_db", std::vector<double>{});
      cb.measured_csv = entry.value("measured_csv", std::string{});
      cb.state_voltages = entry.value("state_voltages", std::vector<double>{});
      c.codebooks.push_back(std::move(cb));
    }
    if (j.contains("methods")) c.methods = j.at("methods").get<std::vector<std::string>>();
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      c.sweep_variable = s.value("variable", c.sweep_variable);
      c.grid = s.value("grid", c.grid);
      c.trials = s.value("trials", c.trials);
    }
    c.seed = j.value("seed", c.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse error in ") + path + ": " + e.what());
  }
  return config_from_json(j);
}

SceneConfig scene_from_config(const ExperimentConfig& c) {
  SceneConfig scene;
  scene.bs_distance_m = c.bs_distance_m;
  scene.user_distance_m = c.user_distance_m;
  scene.bs_azimuth_rad = deg2rad(c.bs_azimuth_deg);
  scene.user_azimuth_rad = deg2rad(c.user_azimuth_deg);
  scene.ris_height_m = c.ris_height_m;
  scene.bs_height_m = c.bs_height_m;
  scene.user_height_m = c.user_height_m;
  scene.element_count = c.elements;
  scene.pitch_h_m = c.pitch_h_m;
  scene.pitch_v_m = c.pitch_v_m;
  scene.wavelength_m = kSpeedOfLight / (c.carrier_ghz * 1e9);
  scene.path_loss_exponent = c.path_loss_exponent;
  scene.antenna_gain = db_to_power(c.antenna_gain_db);
  return scene;
}

RicianConfig rician_from_config(const ExperimentConfig& c) {
  RicianConfig rician;
  rician.k1 = std::min(c.k1, kMaxRicianK);
  rician.k2 = std::min(c.k2, kMaxRicianK);
  if (c.nlos_model == "uma_nlos") {
    rician.nlos.model = NlosGainModel::kUmaNlos;
  } else if (c.nlos_model == "fixed") {
    rician.nlos.model = NlosGainModel::kFixed;
    rician.nlos.fixed = db_to_amplitude(c.nlos_fixed_db);
  } else {
    throw ConfigError("config: unknown nlos_model '" + c.nlos_model + "'");
  }
  return rician;
}

ExperimentSpec to_spec(const ExperimentConfig& c) {
  ExperimentSpec spec;
  spec.scene = scene_from_config(c);
  spec.rician = rician_from_config(c);
  spec.transmit_power_w = dbm_to_watt(c.transmit_dbm);
  spec.trials = c.trials;
  spec.seed = c.seed;
  spec.grid = c.grid;

  for (const auto& name : c.methods) spec.methods.push_back(method_from_name(name));

  if (c.sweep_variable == "elements") {
    spec.variable = SweepVariable::kElements;
  } else if (c.sweep_variable == "decrement_deg") {
    spec.variable = SweepVariable::kDecrementDeg;
  } else if (c.sweep_variable == "user_angle_deg") {
    spec.variable = SweepVariable::kUserAngleDeg;
  } else if (c.sweep_variable == "codebook_set") {
    spec.variable = SweepVariable::kCodebookSet;
  } else {
    throw ConfigError("config: unknown sweep variable '" + c.sweep_variable + "'");
  }

  for (const auto& cb : c.codebooks) {
    CodebookSpec cs;
    cs.label = cb.label;
    cs.value = cb.value;
    if (!cb.measured_csv.empty()) {
      cs.codebook = load_measured_codebook(cb.measured_csv, cb.state_voltages);
    } else {
      cs.codebook = make_codebook_db(cb.bits, deg2rad(cb.omega_deg), cb.amplitudes_db);
    }
    spec.codebooks.push_back(std::move(cs));
  }
  return spec;
}

}  // namespace rislink
