// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// the measured numbers; the binary exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rislink/analysis.hpp"
#include "rislink/beamformer.hpp"
#include "rislink/config.hpp"
#include "rislink/montecarlo.hpp"
#include "rislink/rng.hpp"
#include "rislink/runner.hpp"
#include "rislink/stats.hpp"
#include "rislink/units.hpp"

using namespace rislink;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

SceneConfig default_scene(std::size_t elements) {
  SceneConfig scene;
  scene.element_count = elements;
  return scene;
}

RicianConfig rician_k(double k) {
  RicianConfig rician;
  rician.k1 = rician.k2 = k;
  return rician;
}

Codebook uniform_codebook(int bits, double omega) {
  const std::vector<double> amps(std::size_t{1} << bits, 1.0);
  return make_codebook(bits, omega, amps);
}

// --- 1. element-count scaling slopes ---------------------------------------
Outcome criterion_slopes() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> grid{64, 256, 1024, 4096};
  auto slope_for = [&](double k_factor) {
    ExperimentSpec spec;
    spec.scene = default_scene(4096);
    spec.rician = rician_k(k_factor);
    spec.transmit_power_w = dbm_to_watt(20.0);
    spec.methods = {Method::kContinuous};
    spec.variable = SweepVariable::kElements;
    spec.grid = grid;
    spec.trials = 500;
    spec.seed = 1;
    const SweepResult result = run_sweep(spec);
    std::vector<double> m_values, y_dbm;
    for (const auto& row : result.rows) {
      m_values.push_back(row.sweep_value);
      y_dbm.push_back(watt_to_dbm(row.mean_w));
    }
    return fit_slope_db_per_decade(m_values, y_dbm);
  };
  const double slope_los = slope_for(kMaxRicianK);
  const double slope_rayleigh = slope_for(0.0);
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(slope_los - 20.0) <= 0.5 &&
                    std::abs(slope_rayleigh - 10.0) <= 0.5 && elapsed < 120.0;
  return {pass, fmt("pure LoS %.3f dB/dec (want 20+-0.5), Rayleigh %.3f (want 10+-0.5), %.1fs",
                    slope_los, slope_rayleigh, elapsed)};
}

// --- 2. capability-decrement curves: crossings and MC agreement ------------
Outcome criterion_decrement_curves() {
  const auto start = std::chrono::steady_clock::now();
  const SceneConfig scene = default_scene(256);
  const RicianConfig rician = rician_k(4.0);
  const double pt = dbm_to_watt(20.0);
  const SceneGeometry tmpl = build_scene(scene);
  const AnalysisConstants constants = analysis_constants(tmpl, rician, pt);
  const double larp_max = larp_max_continuous(constants, 256);

  // closed-form crossings on a fine grid
  const double targets[] = {90.0, 140.0, 175.0};
  double crossings[3] = {0, 0, 0};
  bool crossings_ok = true;
  for (int k = 1; k <= 3; ++k) {
    std::vector<double> xs, ys;
    for (double c = 0.0; c <= 180.0; c += 0.5) {
      const double omega = sufficient_capability(k) - deg2rad(c);
      if (!(omega > 1e-9)) break;
      xs.push_back(c);
      ys.push_back(loss_factor_db(expected_larp_uniform(constants, 256, k, omega), larp_max));
    }
    const auto crossing = find_drop_crossing(xs, ys, 3.0);
    crossings[k - 1] = crossing.value_or(-1.0);
    crossings_ok = crossings_ok && crossing && std::abs(*crossing - targets[k - 1]) <= 5.0;
  }

  // Monte Carlo vs the closed form on the preset grids
  double worst_gap_db = 0.0;
  for (int k = 1; k <= 3; ++k) {
    ExperimentSpec spec;
    spec.scene = scene;
    spec.rician = rician;
    spec.transmit_power_w = pt;
    spec.codebooks = {{fmt("k%d", k), 0.0, uniform_codebook(k, sufficient_capability(k))}};
    spec.methods = {Method::kGroupQuery};
    spec.variable = SweepVariable::kDecrementDeg;
    spec.grid.clear();
    for (double c = 0.0; c <= (k == 1 ? 105.0 : 165.0) + 1e-9; c += 15.0) spec.grid.push_back(c);
    spec.trials = 2000;
    spec.seed = 2;
    const SweepResult result = run_sweep(spec);
    for (const auto& row : result.rows) {
      const double omega = sufficient_capability(k) - deg2rad(row.sweep_value);
      const double theory = expected_larp_uniform(constants, 256, k, omega);
      const double gap = std::abs(watt_to_dbm(row.mean_w) - watt_to_dbm(theory));
      worst_gap_db = std::max(worst_gap_db, gap);
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = crossings_ok && worst_gap_db <= 0.3 && elapsed < 300.0;
  return {pass, fmt("3dB drops at %.1f/%.1f/%.1f deg (want 90/140/175 +-5), "
                    "worst |MC-theory| %.3f dB (<=0.3), %.1fs",
                    crossings[0], crossings[1], crossings[2], worst_gap_db, elapsed)};
}

// --- 3. group-query table equals exhaustive search -------------------------
Outcome criterion_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(777);
  const int cases = 10000;
  int mismatches = 0;
  for (int rep = 0; rep < cases; ++rep) {
    const int bits = 1 + static_cast<int>(rng.uniform() * 3.0);
    const double omega = rng.uniform(deg2rad(30.0), kTwoPi);
    const std::size_t n = std::size_t{1} << bits;
    std::vector<double> amps(n);
    for (auto& a : amps) a = db_to_amplitude(rng.uniform(-10.0, 0.0));
    const Codebook cb = make_codebook(bits, omega, amps);
    ObjectiveWeights w;
    w.a_los = 1.0;
    w.a_nlos = rng.uniform() < 0.1 ? 0.0 : std::pow(10.0, rng.uniform(-6.0, 6.0));
    const QuantizationTable table = build_lookup_table(cb, w);
    const double theta = rng.uniform(0.0, kTwoPi);
    const std::size_t got = quantize(table, theta);
    const std::size_t want = exhaustive_quantize(cb, theta, w);
    if (got != want) {
      const double have = p3_objective(cb.entries[got], theta, w);
      const double best = p3_objective(cb.entries[want], theta, w);
      const double scale = std::abs(w.a_nlos) + std::abs(w.a_los);
      if (std::abs(have - best) > 1e-12 * scale) ++mismatches;  // not a tie
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = mismatches == 0 && elapsed < 30.0;
  return {pass, fmt("%d/%d arg-max matches (ties aligned), %.1fs", cases - mismatches, cases,
                    elapsed)};
}

// --- 4. closed forms agree with each other ---------------------------------
Outcome criterion_cross_formula() {
  AnalysisConstants pure;
  pure.eta_los = 1.7;
  pure.kappa_los = 1.7;
  pure.kappa_nlos = 0.0;

  double worst_two_state = 0.0;
  for (double a1 : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    for (double a2 : {0.15, 0.35, 0.55, 0.75, 0.95}) {
      for (double omega_deg : {30.0, 100.0, 170.0, 260.0}) {
        const double omega = deg2rad(omega_deg);
        Codebook cb;
        cb.bits = 1;
        cb.capability_rad = omega;
        cb.entries = {{0.0, a1}, {std::min(omega, kPi), a2}};
        ObjectiveWeights w;
        w.a_nlos = 0.0;
        w.a_los = 1.0;
        const QuantizationTable table = build_lookup_table(cb, w);
        const double general = expected_larp_quantized(pure, 64, cb, table);
        const double closed = expected_larp_two_state_los(1.7, 64, a1, a2, omega);
        worst_two_state = std::max(worst_two_state,
                                   std::abs(general - closed) / std::max(closed, 1e-300));
      }
    }
  }

  AnalysisConstants mixed;
  mixed.kappa_los = 0.9;
  mixed.kappa_nlos = 0.2;
  double worst_uniform = 0.0;
  for (int k = 1; k <= 5; ++k) {
    for (int step = 0; step < 10; ++step) {
      const double omega = deg2rad(36.0 + 32.4 * step);  // 36..327.6 deg
      const Codebook cb = uniform_codebook(k, std::min(omega, kTwoPi));
      ObjectiveWeights w;
      w.a_nlos = mixed.kappa_nlos;
      w.a_los = 128.0 * mixed.kappa_los;
      const QuantizationTable table = build_lookup_table(cb, w);
      const double general = expected_larp_quantized(mixed, 128, cb, table);
      const double uniform = expected_larp_uniform(mixed, 128, k, std::min(omega, kTwoPi));
      worst_uniform = std::max(worst_uniform, std::abs(general - uniform) / uniform);
    }
  }
  const bool pass = worst_two_state <= 1e-9 && worst_uniform <= 1e-9;
  return {pass, fmt("two-state rel err %.2e (<=1e-9, 100 pts), uniform rel err %.2e (<=1e-9, 50 pts)",
                    worst_two_state, worst_uniform)};
}

// --- 5. brute-force LARP oracle --------------------------------------------
Outcome criterion_brute_force_larp() {
  AnalysisConstants c;
  c.kappa_los = 1.3;
  c.kappa_nlos = 0.4;
  Rng rng(555);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 64.0);
    std::vector<double> amps(m), phases(m);
    for (std::size_t i = 0; i < m; ++i) {
      amps[i] = rng.uniform(0.05, 1.0);
      phases[i] = rng.uniform(0.0, 4.0 * kTwoPi);
    }
    double amp_sq = 0.0;
    double cross = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      amp_sq += amps[i] * amps[i];
      for (std::size_t j = 0; j < m; ++j)
        cross += amps[i] * amps[j] * std::cos(phases[i] - phases[j]);
    }
    const double direct = c.kappa_nlos * amp_sq + c.kappa_los * cross;
    const double collapsed = larp(c, amps, phases);
    worst = std::max(worst, std::abs(direct - collapsed) / std::max(direct, 1e-300));
  }
  return {worst <= 1e-12, fmt("1000 instances, worst rel err %.2e (<=1e-12)", worst)};
}

// --- 6. insufficient-capability degradation anchor -------------------------
Outcome criterion_capability_anchor() {
  const auto start = std::chrono::steady_clock::now();
  const double theory_db =
      10.0 * std::log10((2.0 - 2.0 * std::cos(deg2rad(30.0))) / 4.0);  // -11.74

  ExperimentSpec spec;
  spec.scene = default_scene(4096);
  spec.rician = rician_k(kMaxRicianK);
  spec.transmit_power_w = dbm_to_watt(20.0);
  spec.codebooks = {{"k1", 0.0, uniform_codebook(1, kPi)}};
  spec.methods = {Method::kGroupQuery};
  spec.variable = SweepVariable::kDecrementDeg;
  spec.grid = {0.0, 150.0};  // capability 180 and 30 degrees
  spec.trials = 2000;
  spec.seed = 3;
  const SweepResult result = run_sweep(spec);
  const double mc_db = watt_to_dbm(result.rows.at(1).mean_w) - watt_to_dbm(result.rows.at(0).mean_w);
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(mc_db - theory_db) <= 0.3;
  return {pass, fmt("theory %.3f dB, MC %.3f dB, |diff| %.3f (<=0.3), %.1fs", theory_db, mc_db,
                    std::abs(mc_db - theory_db), elapsed)};
}

// --- 7. method ordering on the non-uniform amplitude sets ------------------
Outcome criterion_method_ordering() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::vector<double>> sets = {
      {0.0, -6.0, -10.0, -3.0},
      {0.0, -3.0, -6.0, -9.0, -10.0, -7.0, -3.0, -2.0},
  };
  bool ordering_ok = true;
  bool growth_ok = true;
  std::vector<std::vector<double>> gaps(2), noise(2);
  for (std::size_t set = 0; set < 2; ++set) {
    int bits = 0;
    for (std::size_t n = sets[set].size(); n > 1; n >>= 1) ++bits;
    ExperimentSpec spec;
    spec.scene = default_scene(256);
    spec.rician = rician_k(4.0);
    spec.transmit_power_w = dbm_to_watt(20.0);
    spec.codebooks = {
        {fmt("k%d", bits), 0.0, make_codebook_db(bits, sufficient_capability(bits), sets[set])}};
    spec.methods = {Method::kGroupQuery, Method::kNearestPhase};
    spec.variable = SweepVariable::kDecrementDeg;
    spec.grid.clear();
    for (double c = 0.0; c <= 180.0 + 1e-9; c += 15.0) spec.grid.push_back(c);
    spec.trials = 1000;
    spec.seed = 4;
    const SweepResult result = run_sweep(spec);
    for (std::size_t i = 0; i + 1 < result.rows.size(); i += 2) {
      const SweepRow& gq = result.rows[i];
      const SweepRow& np = result.rows[i + 1];
      if (gq.mean_w < np.mean_w - (gq.stderr_w + np.stderr_w)) ordering_ok = false;
      gaps[set].push_back(gq.mean_w - np.mean_w);
      noise[set].push_back(gq.stderr_w + np.stderr_w);
    }
  }
  // the 3-bit gap must not fall below the 2-bit gap at c >= 120 deg
  for (std::size_t i = 0; i < gaps[0].size(); ++i) {
    const double c = 15.0 * static_cast<double>(i);
    if (c < 120.0) continue;
    if (gaps[1][i] < gaps[0][i] - (noise[0][i] + noise[1][i])) growth_ok = false;
  }
  const double elapsed = seconds_since(start);
  return {ordering_ok && growth_ok,
          fmt("GQ>=NP at all points: %s, gap(k=3)>=gap(k=2) at c>=120: %s, %.1fs",
              ordering_ok ? "yes" : "NO", growth_ok ? "yes" : "NO", elapsed)};
}

// --- 8. amplitude crossover of the closed-form curves ----------------------
Outcome criterion_amplitude_crossover() {
  const SceneGeometry scene = build_scene(default_scene(4096));
  const AnalysisConstants constants = analysis_constants(scene, rician_k(4.0), dbm_to_watt(20.0));
  const std::vector<std::vector<double>> sets = {
      {0.0, -5.0, -6.0, -2.0},
      {0.0, -6.0, -10.0, -3.0},
  };
  std::vector<std::vector<double>> curves(2);
  for (std::size_t set = 0; set < 2; ++set) {
    for (double c = 0.0; c <= 260.0 + 1e-9; c += 10.0) {
      const double omega = sufficient_capability(2) - deg2rad(c);
      const Codebook cb = make_codebook_db(2, omega, sets[set]);
      const ObjectiveWeights w = objective_weights(constants, cb, 4096);
      const QuantizationTable table = build_lookup_table(cb, w);
      curves[set].push_back(expected_larp_quantized(constants, 4096, cb, table));
    }
  }
  int sign_changes = 0;
  double crossing_c = -1.0;
  for (std::size_t i = 0; i + 1 < curves[0].size(); ++i) {
    const double d0 = curves[0][i] - curves[1][i];
    const double d1 = curves[0][i + 1] - curves[1][i + 1];
    if ((d0 > 0.0 && d1 <= 0.0) || (d0 < 0.0 && d1 >= 0.0)) {
      ++sign_changes;
      crossing_c = 10.0 * static_cast<double>(i + 1);
    }
  }
  const bool higher_first = curves[0][0] > curves[1][0];
  const bool lower_last = curves[0].back() < curves[1].back();
  const bool pass = sign_changes == 1 && higher_first && lower_last;
  return {pass, fmt("crossings %d (want exactly 1, near c=%.0f deg); set 1 leads at c=0: %s, "
                    "set 2 leads at c=260: %s",
                    sign_changes, crossing_c, higher_first ? "yes" : "NO",
                    lower_last ? "yes" : "NO")};
}

// --- 9. preset determinism --------------------------------------------------
Outcome criterion_determinism() {
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  bool pass = true;
  std::string detail;
  for (const std::string preset : {"fig5", "fig13-replay"}) {
    const fs::path dir_a = fs::temp_directory_path() / ("rislink_acc_a_" + preset);
    const fs::path dir_b = fs::temp_directory_path() / ("rislink_acc_b_" + preset);
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    RunOptions options;
    options.elements = 64;
    options.trials = 100;
    options.seed = 20;
    options.out_dir = dir_a.string();
    const RunManifest a = run_named(preset, options);
    options.out_dir = dir_b.string();
    const RunManifest b = run_named(preset, options);
    for (std::size_t i = 0; i < a.files.size(); ++i) {
      const bool same_bytes = slurp(dir_a / a.files[i].name) == slurp(dir_b / b.files[i].name);
      const bool same_hash = a.files[i].fnv1a64_hex == b.files[i].fnv1a64_hex;
      if (!(same_bytes && same_hash)) pass = false;
    }
    detail += preset + ":" + (pass ? "identical " : "DIFFERS ");
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const struct {
    const char* name;
    std::function<Outcome()> run;
  } criteria[] = {
      {"element-count scaling slopes (20 / 10 dB per decade)", criterion_slopes},
      {"capability-decrement curves: 3 dB drops and MC agreement", criterion_decrement_curves},
      {"group-query table equals exhaustive search", criterion_oracle_equivalence},
      {"closed forms agree across routes", criterion_cross_formula},
      {"brute-force received-power oracle", criterion_brute_force_larp},
      {"30-degree capability degradation anchor", criterion_capability_anchor},
      {"method ordering on non-uniform amplitude sets", criterion_method_ordering},
      {"amplitude crossover of the expected-power curves", criterion_amplitude_crossover},
      {"bit-identical preset reruns", criterion_determinism},
  };

  int failures = 0;
  int index = 0;
  for (const auto& criterion : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d. %s: %s\n", outcome.pass ? "PASS" : "FAIL", index, criterion.name,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
