// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include "rislink/montecarlo.hpp"

#include <cmath>

#include "rislink/errors.hpp"
#include "rislink/stats.hpp"
#include "rislink/units.hpp"

namespace rislink {

double run_trial(const ChannelPair& channel, const ReflectionConfig& reflection,
                 double transmit_power_w) {
  if (channel.size() != reflection.size())
    throw ConfigError("run_trial: channel/reflection dimension mismatch");
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t m = 0; m < channel.size(); ++m) {
    sum += channel.f[m] * std::polar(reflection.amplitudes[m], -reflection.phases_rad[m]) *
           channel.h[m];
  }
  return transmit_power_w * std::norm(sum);
}

PointResult run_point(const PointSpec& spec) {
  if (spec.trials < 1) throw ConfigError("run_point: trials must be >= 1");

  // Long-term selection state from the template scene: the objective weights
  // and the phase-range table do not track per-trial user motion.
  ObjectiveWeights weights;
  QuantizationTable table;
  if (spec.method != Method::kContinuous) {
    const SceneGeometry tmpl = build_scene(spec.scene);
    const AnalysisConstants constants =
        analysis_constants(tmpl, spec.rician, spec.transmit_power_w);
    weights = objective_weights(constants, spec.codebook, tmpl.element_count());
    table = build_lookup_table(spec.codebook, weights);
  }

  std::vector<double> powers(static_cast<std::size_t>(spec.trials));
  for (int trial = 0; trial < spec.trials; ++trial) {
    Rng rng(substream_seed(spec.master_seed, spec.point_key, static_cast<std::uint64_t>(trial)));
    SceneConfig scene_cfg = spec.scene;
    if (spec.randomize_user_angle) scene_cfg.user_azimuth_rad = rng.uniform(0.0, kPi / 2.0);
    const SceneGeometry scene = build_scene(scene_cfg);
    const LosPair los = los_components(scene);
    const NlosPair nlos = nlos_components(scene, spec.rician, rng);
    const ChannelPair channel = assemble_channel(los, nlos, spec.rician);

    ReflectionConfig reflection;
    switch (spec.method) {
      case Method::kContinuous:
        reflection = configure_ris(scene, spec.codebook, weights, Method::kContinuous);
        break;
      case Method::kGroupQuery:
        reflection = configure_with_table(scene, spec.codebook, table);
        break;
      case Method::kNearestPhase:
      case Method::kExhaustive:
        reflection = configure_ris(scene, spec.codebook, weights, spec.method);
        break;
    }
    powers[static_cast<std::size_t>(trial)] = run_trial(channel, reflection, spec.transmit_power_w);
  }

  const MeanStderr ms = mean_stderr(powers);
  PointResult result;
  result.mean_w = ms.mean;
  result.stderr_w = ms.defined ? ms.stderr_ : 0.0;
  result.stderr_defined = ms.defined;
  result.trials = spec.trials;
  return result;
}

namespace {

// Closed-form companion for one sweep row.
double closed_form_larp(const AnalysisConstants& constants, std::size_t element_count,
                        Method method, const Codebook& codebook) {
  switch (method) {
    case Method::kContinuous:
      return larp_max_continuous(constants, element_count);
    case Method::kNearestPhase: {
      const QuantizationTable table = nearest_phase_table(codebook);
      return expected_larp_quantized(constants, element_count, codebook, table);
    }
    case Method::kGroupQuery:
    case Method::kExhaustive: {
      const ObjectiveWeights weights = objective_weights(constants, codebook, element_count);
      const QuantizationTable table = build_lookup_table(codebook, weights);
      return expected_larp_quantized(constants, element_count, codebook, table);
    }
  }
  return 0.0;
}

}  // namespace

SweepResult run_sweep(const ExperimentSpec& spec) {
  if (spec.grid.empty()) throw ConfigError("run_sweep: empty grid");
  if (spec.trials < 1) throw ConfigError("run_sweep: trials must be >= 1");
  if (spec.methods.empty()) throw ConfigError("run_sweep: no methods");
  const bool needs_codebooks =
      std::any_of(spec.methods.begin(), spec.methods.end(),
                  [](Method m) { return m != Method::kContinuous; });
  if (needs_codebooks && spec.codebooks.empty())
    throw ConfigError("run_sweep: quantized methods need a codebook");

  SweepResult result;
  result.seed = spec.seed;

  for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
    const double value = spec.grid[gi];
    for (Method method : spec.methods) {
      const bool continuous = method == Method::kContinuous;
      // codebook-set sweeps select the codebook through the grid value
      const std::size_t cb_count =
          continuous || spec.variable == SweepVariable::kCodebookSet ? 1 : spec.codebooks.size();
      for (std::size_t ci = 0; ci < cb_count; ++ci) {
        SweepRow row;
        row.method = method;
        row.trials = spec.trials;

        PointSpec point;
        point.scene = spec.scene;
        point.rician = spec.rician;
        point.transmit_power_w = spec.transmit_power_w;
        point.method = method;
        point.trials = spec.trials;
        point.master_seed = spec.seed;
        point.point_key = gi;  // shared across methods and codebooks: paired trials

        Codebook codebook;
        if (!continuous) codebook = spec.codebooks[ci].codebook;
        row.codebook_label = continuous ? "" : spec.codebooks[ci].label;
        row.sweep_value = value;

        switch (spec.variable) {
          case SweepVariable::kElements: {
            const auto m = static_cast<std::size_t>(value);
            if (m < 1 || static_cast<double>(m) != value)
              throw ConfigError("run_sweep: element grid values must be positive integers");
            point.scene.element_count = m;
            break;
          }
          case SweepVariable::kDecrementDeg: {
            if (continuous) break;
            const double omega = sufficient_capability(codebook.bits) - deg2rad(value);
            if (!(omega > 0.0))
              throw ConfigError("run_sweep: decrement leaves no phase capability");
            std::vector<double> amplitudes;
            for (const auto& e : codebook.entries) amplitudes.push_back(e.amplitude);
            codebook = make_codebook(codebook.bits, omega, amplitudes);
            break;
          }
          case SweepVariable::kUserAngleDeg:
            point.scene.user_azimuth_rad = deg2rad(value);
            point.randomize_user_angle = false;
            break;
          case SweepVariable::kCodebookSet: {
            if (continuous) break;
            const auto idx = static_cast<std::size_t>(value);
            if (idx >= spec.codebooks.size() || static_cast<double>(idx) != value)
              throw ConfigError("run_sweep: codebook-set grid values must index the codebooks");
            codebook = spec.codebooks[idx].codebook;
            row.codebook_label = spec.codebooks[idx].label;
            row.sweep_value = spec.codebooks[idx].value;
            break;
          }
        }
        point.codebook = codebook;

        const PointResult pr = run_point(point);
        row.mean_w = pr.mean_w;
        row.stderr_w = pr.stderr_w;
        row.stderr_defined = pr.stderr_defined;

        const SceneGeometry tmpl = build_scene(point.scene);
        const AnalysisConstants constants =
            analysis_constants(tmpl, spec.rician, spec.transmit_power_w);
        row.closed_form_w = closed_form_larp(constants, tmpl.element_count(), method, codebook);
        row.eps_db = loss_factor_db(row.mean_w, larp_max_continuous(constants, tmpl.element_count()));
        row.bits = continuous ? 0 : codebook.bits;
        row.omega_deg = continuous ? 360.0 : rad2deg(codebook.capability_rad);

        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

const char* method_name(Method method) {
  switch (method) {
    case Method::kContinuous: return "continuous";
    case Method::kGroupQuery: return "group_query";
    case Method::kNearestPhase: return "nearest_phase";
    case Method::kExhaustive: return "exhaustive";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "continuous") return Method::kContinuous;
  if (name == "group_query") return Method::kGroupQuery;
  if (name == "nearest_phase") return Method::kNearestPhase;
  if (name == "exhaustive") return Method::kExhaustive;
  throw ConfigError("unknown method: " + name);
}

}  // namespace rislink
