// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include "rislink/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rislink/errors.hpp"
#include "rislink/stats.hpp"
#include "rislink/units.hpp"

namespace rislink {

namespace fs = std::filesystem;
using nlohmann::json;

const char* const kSampleMeasuredResponseCsv =
    "# frequency_ghz: 2.6\n"
    "# incident_angle_deg: 10\n"
    "voltage,phase_deg,amplitude_db\n"
    "0.0,0.46,-0.30\n"
    "0.5,0.80,-0.31\n"
    "1.0,1.38,-0.32\n"
    "1.5,2.39,-0.35\n"
    "2.0,4.12,-0.41\n"
    "2.5,7.08,-0.51\n"
    "3.0,12.09,-0.68\n"
    "3.5,20.43,-0.94\n"
    "4.0,33.92,-1.29\n"
    "4.5,54.78,-1.72\n"
    "5.0,84.91,-2.18\n"
    "5.5,124.39,-2.60\n"
    "6.0,170.00,-2.89\n"
    "6.5,215.61,-3.00\n"
    "7.0,255.09,-2.89\n"
    "7.5,285.22,-2.60\n"
    "8.0,306.08,-2.18\n"
    "8.5,319.57,-1.72\n"
    "9.0,327.91,-1.29\n"
    "9.5,332.92,-0.94\n"
    "10.0,335.88,-0.68\n"
    "10.5,337.61,-0.51\n"
    "11.0,338.62,-0.41\n"
    "11.5,339.20,-0.35\n"
    "12.0,339.54,-0.32\n";

namespace {

struct Job {
  std::string stem;  ///< CSV file stem; jobs may share one file
  ExperimentConfig config;
};

// Two-state element responses measured on a 5.8 GHz prototype at six
// incidence angles: {angle_deg, phase_difference_deg, amplitude_difference_db}.
// Consumed as replay input data; state 0 is anchored at (0 deg, 0 dB).
constexpr struct {
  double angle_deg, phase_diff_deg, amp_diff_db;
} kIncidenceStates[] = {
    {10.0, 180.0, 2.0}, {20.0, 160.0, 0.7}, {30.0, 132.0, 0.1},
    {40.0, 117.0, 0.3}, {50.0, 107.0, 2.3}, {60.0, 76.0, 1.5},
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

double stderr_db_of(const SweepRow& row) {
  if (!row.stderr_defined || !(row.mean_w > 0.0)) return 0.0;
  return 10.0 / std::log(10.0) * row.stderr_w / row.mean_w;
}

constexpr const char* kCsvHeader =
    "sweep_value,mean_dbm,stderr_db,closedform_dbm,eps_db,method,k,omega_deg";

void write_sweep_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << fmt(r.sweep_value) << ',' << fmt(watt_to_dbm(r.mean_w)) << ','
        << fmt(stderr_db_of(r)) << ',' << fmt(watt_to_dbm(r.closed_form_w)) << ','
        << fmt(r.eps_db) << ',' << method_name(r.method) << ',' << r.bits << ','
        << fmt(r.omega_deg) << '\n';
  }
}

struct TheoryRow {
  double sweep_value = 0.0;
  double closed_form_w = 0.0;
  double eps_db = 0.0;
  Method method = Method::kGroupQuery;
  int bits = 0;
  double omega_deg = 0.0;
};

void write_theory_csv(const fs::path& path, const std::vector<TheoryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << fmt(r.sweep_value) << ",,," << fmt(watt_to_dbm(r.closed_form_w)) << ','
        << fmt(r.eps_db) << ',' << method_name(r.method) << ',' << r.bits << ','
        << fmt(r.omega_deg) << '\n';
  }
}

ExperimentConfig base_config() { return ExperimentConfig{}; }

std::vector<double> range_grid(double lo, double hi, double step) {
  std::vector<double> grid;
  for (double v = lo; v <= hi + 1e-9; v += step) grid.push_back(v);
  return grid;
}

std::vector<double> zeros(std::size_t n) { return std::vector<double>(n, 0.0); }

std::vector<Job> fig4_jobs(const RunOptions& options) {
  const struct {
    const char* label;
    double k;
  } channels[] = {{"pure_los", kMaxRicianK}, {"rician_k4", 4.0}, {"rayleigh", 0.0}};
  std::vector<Job> jobs;
  for (const auto& ch : channels) {
    if (options.channels && *options.channels != ch.label) continue;
    ExperimentConfig c = base_config();
    c.k1 = c.k2 = ch.k;
    c.methods = {"continuous"};
    c.sweep_variable = "elements";
    c.grid = {64, 256, 1024, 4096};
    jobs.push_back({std::string("fig4_") + ch.label, std::move(c)});
  }
  if (jobs.empty()) throw ConfigError("fig4: unknown channel filter '" + *options.channels + "'");
  return jobs;
}

// Monte Carlo grids stop where the closed form's coherent-term dominance
// still holds at desk scale (M = 256); the theory curves extend to 180 deg.
std::vector<Job> fig5_jobs() {
  std::vector<Job> jobs;
  for (int k = 1; k <= 3; ++k) {
    ExperimentConfig c = base_config();
    c.elements = 4096;
    CodebookConfig cb;
    cb.label = "k" + std::to_string(k);
    cb.bits = k;
    cb.omega_deg = rad2deg(sufficient_capability(k));
    cb.amplitudes_db = zeros(std::size_t{1} << k);
    c.codebooks = {cb};
    c.methods = {"group_query"};
    c.sweep_variable = "decrement_deg";
    c.grid = range_grid(0.0, k == 1 ? 105.0 : 165.0, 15.0);
    jobs.push_back({"fig5", std::move(c)});
  }
  return jobs;
}

std::vector<Job> fig6_jobs() {
  const std::vector<std::vector<double>> sets = {
      {0.0, -6.0, -10.0, -3.0},
      {0.0, -3.0, -6.0, -9.0, -10.0, -7.0, -3.0, -2.0},
  };
  std::vector<Job> jobs;
  for (const auto& amplitudes : sets) {
    int k = 0;
    for (std::size_t n = amplitudes.size(); n > 1; n >>= 1) ++k;
    ExperimentConfig c = base_config();
    c.elements = 4096;
    CodebookConfig cb;
    cb.label = "k" + std::to_string(k);
    cb.bits = k;
    cb.omega_deg = rad2deg(sufficient_capability(k));
    cb.amplitudes_db = amplitudes;
    c.codebooks = {cb};
    c.methods = {"group_query", "nearest_phase", "exhaustive"};
    c.sweep_variable = "decrement_deg";
    c.grid = range_grid(0.0, 180.0, 15.0);
    jobs.push_back({"fig6", std::move(c)});
  }
  return jobs;
}

std::vector<Job> fig7_jobs() {
  const std::vector<std::pair<std::string, std::vector<double>>> sets = {
      {"cb1", {0.0, -5.0, -6.0, -2.0}},
      {"cb2", {0.0, -6.0, -10.0, -3.0}},
  };
  std::vector<Job> jobs;
  for (const auto& [label, amplitudes] : sets) {
    ExperimentConfig c = base_config();
    c.elements = 4096;
    CodebookConfig cb;
    cb.label = label;
    cb.bits = 2;
    cb.omega_deg = rad2deg(sufficient_capability(2));
    cb.amplitudes_db = amplitudes;
    c.codebooks = {cb};
    c.methods = {"group_query"};
    c.sweep_variable = "decrement_deg";
    c.grid = range_grid(0.0, 260.0, 10.0);
    jobs.push_back({"fig7_" + label, std::move(c)});
  }
  return jobs;
}

// Bench geometry shared by the replay presets: endpoints on a 2.5 m arc in
// the array's horizontal plane, LoS-dominated channel.
void apply_bench_scene(ExperimentConfig& c, double carrier_ghz, std::size_t elements,
                       double pitch_h, double pitch_v) {
  c.carrier_ghz = carrier_ghz;
  c.elements = elements;
  c.pitch_h_m = pitch_h;
  c.pitch_v_m = pitch_v;
  c.bs_distance_m = 2.5;
  c.user_distance_m = 2.5;
  c.ris_height_m = c.bs_height_m = c.user_height_m = 1.0;
  c.k1 = c.k2 = kMaxRicianK;
  c.nlos_model = "fixed";
  c.nlos_fixed_db = -60.0;
}

std::vector<Job> table1_jobs() {
  ExperimentConfig c;
  apply_bench_scene(c, 5.8, 1100, 0.0143, 0.01027);
  for (const auto& s : kIncidenceStates) {
    CodebookConfig cb;
    cb.label = "deg" + std::to_string(static_cast<int>(s.angle_deg));
    cb.value = s.angle_deg;
    cb.bits = 1;
    cb.omega_deg = s.phase_diff_deg;
    cb.amplitudes_db = {0.0, -s.amp_diff_db};
    c.codebooks.push_back(cb);
  }
  c.methods = {"group_query"};
  c.sweep_variable = "codebook_set";
  c.grid = {0, 1, 2, 3, 4, 5};
  return {{"table1_replay", std::move(c)}};
}

// Inverse lookup on a monotone measured phase curve.
double voltage_at_phase(const MeasuredResponse& resp, double phase_rad) {
  const auto& pts = resp.points;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].phase_rad < pts[i - 1].phase_rad)
      throw ConfigError("measured response: phase curve must be monotone for pair selection");
  if (phase_rad < pts.front().phase_rad || phase_rad > pts.back().phase_rad)
    throw ConfigError("measured response: requested phase outside the measured span");
  std::size_t hi = 1;
  while (hi + 1 < pts.size() && pts[hi].phase_rad < phase_rad) ++hi;
  const auto& a = pts[hi - 1];
  const auto& b = pts[hi];
  const double span = b.phase_rad - a.phase_rad;
  const double t = span > 0.0 ? (phase_rad - a.phase_rad) / span : 0.0;
  return a.voltage_v + t * (b.voltage_v - a.voltage_v);
}

std::vector<Job> fig13_jobs(const RunOptions& options) {
  MeasuredResponse resp;
  if (options.measured_csv) {
    resp = load_measured_response(*options.measured_csv);
  } else {
    std::istringstream in(kSampleMeasuredResponseCsv);
    resp = parse_measured_response(in);
  }
  // Bias pairs centred on the sweep midpoint, one per target phase difference.
  const double lo = resp.points.front().phase_rad;
  const double hi = resp.points.back().phase_rad;
  const double centre = 0.5 * (lo + hi);

  ExperimentConfig c;
  apply_bench_scene(c, 2.6, 256, 0.045, 0.045);
  // Pair voltages resolve to plain phase/amplitude codebooks so the config
  // echo stays self-contained.
  const double targets[] = {180.0, 150.0, 120.0, 90.0, 60.0, 30.0};
  for (double target : targets) {
    const double half = 0.5 * deg2rad(target);
    if (centre - half < lo || centre + half > hi)
      throw ConfigError("fig13-replay: measured span cannot produce a " +
                        std::to_string(static_cast<int>(target)) + " deg pair");
    const double v0 = voltage_at_phase(resp, centre - half);
    const double v1 = voltage_at_phase(resp, centre + half);
    const Codebook cb = measured_codebook(resp, std::vector<double>{v0, v1});
    CodebookConfig cc;
    cc.label = "diff" + std::to_string(static_cast<int>(target));
    cc.value = target;
    cc.bits = 1;
    cc.omega_deg = rad2deg(cb.capability_rad);
    cc.amplitudes_db = {amplitude_to_db(cb.entries[0].amplitude),
                        amplitude_to_db(cb.entries[1].amplitude)};
    c.codebooks.push_back(cc);
  }
  c.methods = {"group_query"};
  c.sweep_variable = "codebook_set";
  c.grid = {0, 1, 2, 3, 4, 5};
  return {{"fig13_replay", std::move(c)}};
}

void apply_overrides(std::vector<Job>& jobs, const RunOptions& options) {
  for (auto& job : jobs) {
    if (options.seed) job.config.seed = *options.seed;
    if (options.trials) job.config.trials = *options.trials;
    if (options.elements) job.config.elements = *options.elements;
    if (options.method) {
      (void)method_from_name(*options.method);  // validate
      job.config.methods = {*options.method};
    }
  }
}

json theory_and_extras_fig4(const std::vector<Job>& jobs,
                            const std::vector<SweepResult>& results) {
  json slopes;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    std::vector<double> m_values, y_dbm;
    for (const auto& row : results[i].rows) {
      m_values.push_back(row.sweep_value);
      y_dbm.push_back(watt_to_dbm(row.mean_w));
    }
    slopes[jobs[i].stem.substr(5)] = fit_slope_db_per_decade(m_values, y_dbm);
  }
  return json{{"slope_db_per_decade", slopes}};
}

json theory_and_extras_fig5(const Job& first_job, const fs::path& out_dir,
                            std::vector<ManifestFile>& files) {
  const ExperimentSpec spec = to_spec(first_job.config);
  const SceneGeometry scene = build_scene(spec.scene);
  const AnalysisConstants constants =
      analysis_constants(scene, spec.rician, spec.transmit_power_w);
  const double larp_max = larp_max_continuous(constants, scene.element_count());

  std::vector<TheoryRow> rows;
  json crossings;
  for (int k = 1; k <= 3; ++k) {
    std::vector<double> xs, ys;
    for (double c_deg = 0.0; c_deg <= 180.0; c_deg += 1.0) {
      const double omega = sufficient_capability(k) - deg2rad(c_deg);
      if (!(omega > 1e-9)) break;
      TheoryRow row;
      row.sweep_value = c_deg;
      row.closed_form_w = expected_larp_uniform(constants, scene.element_count(), k, omega);
      row.eps_db = loss_factor_db(row.closed_form_w, larp_max);
      row.bits = k;
      row.omega_deg = rad2deg(omega);
      rows.push_back(row);
      xs.push_back(c_deg);
      ys.push_back(row.eps_db);
    }
    const auto crossing = find_drop_crossing(xs, ys, 3.0);
    crossings["k" + std::to_string(k)] = crossing ? json(*crossing) : json(nullptr);
  }
  const fs::path path = out_dir / "fig5_theory.csv";
  write_theory_csv(path, rows);
  files.push_back({"fig5_theory.csv", hex64(fnv1a64_file(path.string()))});
  return json{{"loss_3db_crossing_c_deg", crossings}};
}

json extras_fig7(const std::vector<SweepResult>& results) {
  // count sign changes of the closed-form difference over the common grid
  const auto& rows1 = results[0].rows;
  const auto& rows2 = results[1].rows;
  int crossings = 0;
  double crossing_c = 0.0;
  for (std::size_t i = 0; i + 1 < std::min(rows1.size(), rows2.size()); ++i) {
    const double d0 = rows1[i].closed_form_w - rows2[i].closed_form_w;
    const double d1 = rows1[i + 1].closed_form_w - rows2[i + 1].closed_form_w;
    if (d0 > 0.0 && d1 <= 0.0) {
      ++crossings;
      crossing_c = rows1[i + 1].sweep_value;
    } else if (d0 < 0.0 && d1 >= 0.0) {
      ++crossings;
      crossing_c = rows1[i + 1].sweep_value;
    }
  }
  return json{{"theory_crossing_count", crossings}, {"theory_crossing_c_deg", crossing_c}};
}

json extras_baseline_relative(const SweepResult& result) {
  json deltas = json::array();
  if (result.rows.empty()) return deltas;
  const double base = result.rows.front().eps_db;
  for (const auto& row : result.rows)
    deltas.push_back(json{{"value", row.sweep_value}, {"delta_db", row.eps_db - base}});
  return json{{"relative_to_baseline_db", deltas}};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig4", "fig5", "fig6", "fig7", "table1-replay", "fig13-replay"};
}

RunManifest run_named(const std::string& target, const RunOptions& options) {
  const fs::path out_dir(options.out_dir);
  fs::create_directories(out_dir);

  std::vector<Job> jobs;
  bool is_preset = true;
  if (target == "fig4") {
    jobs = fig4_jobs(options);
  } else if (target == "fig5") {
    jobs = fig5_jobs();
  } else if (target == "fig6") {
    jobs = fig6_jobs();
  } else if (target == "fig7") {
    jobs = fig7_jobs();
  } else if (target == "table1-replay") {
    jobs = table1_jobs();
  } else if (target == "fig13-replay") {
    jobs = fig13_jobs(options);
  } else if (target.size() > 5 && target.substr(target.size() - 5) == ".json") {
    jobs = {{"run", load_config(target)}};
    is_preset = false;
  } else {
    throw ConfigError("unknown preset '" + target + "' (and not a .json config path)");
  }
  apply_overrides(jobs, options);

  std::vector<SweepResult> results;
  std::map<std::string, std::vector<SweepRow>> rows_by_stem;
  std::vector<std::string> stem_order;
  json config_echo = json::array();
  std::string hash_input;
  for (const auto& job : jobs) {
    const ExperimentSpec spec = to_spec(job.config);
    results.push_back(run_sweep(spec));
    if (rows_by_stem.find(job.stem) == rows_by_stem.end()) stem_order.push_back(job.stem);
    auto& rows = rows_by_stem[job.stem];
    rows.insert(rows.end(), results.back().rows.begin(), results.back().rows.end());
    const json echo = config_to_json(job.config);
    config_echo.push_back(json{{"file", job.stem + ".csv"}, {"config", echo}});
    hash_input += echo.dump();
  }

  RunManifest manifest;
  manifest.target = target;
  manifest.seed = jobs.front().config.seed;
  manifest.trials = jobs.front().config.trials;
  manifest.noise_dbm = jobs.front().config.noise_dbm;
  manifest.spec_hash_hex = hex64(fnv1a64(hash_input));
  manifest.config_echo = std::move(config_echo);

  for (const auto& stem : stem_order) {
    const fs::path path = out_dir / (stem + ".csv");
    write_sweep_csv(path, rows_by_stem[stem]);
    manifest.files.push_back({stem + ".csv", hex64(fnv1a64_file(path.string()))});
  }

  if (is_preset && target == "fig4") manifest.extras = theory_and_extras_fig4(jobs, results);
  if (is_preset && target == "fig5")
    manifest.extras = theory_and_extras_fig5(jobs.front(), out_dir, manifest.files);
  if (is_preset && target == "fig7") manifest.extras = extras_fig7(results);
  if (is_preset && (target == "table1-replay" || target == "fig13-replay"))
    manifest.extras = extras_baseline_relative(results.front());

  json mj{{"target", manifest.target},
          {"seed", manifest.seed},
          {"trials", manifest.trials},
          {"noise_dbm", manifest.noise_dbm},
          {"spec_hash", manifest.spec_hash_hex},
          {"extras", manifest.extras},
          {"configs", manifest.config_echo}};
  json files = json::array();
  for (const auto& f : manifest.files) files.push_back(json{{"name", f.name}, {"fnv1a64", f.fnv1a64_hex}});
  mj["files"] = files;

  std::ofstream out(out_dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest.json");
  out << mj.dump(2) << '\n';
  return manifest;
}

}  // namespace rislink
