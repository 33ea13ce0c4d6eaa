// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include "rislink/beamformer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rislink/errors.hpp"
#include "rislink/units.hpp"

namespace rislink {

namespace {

// Boundary dedup width; distinct envelope crossings are never this close
// unless they are the same point computed through different pairs.
constexpr double kBoundaryEps = 1e-13;

// Fills ranges and lengths from a sorted boundary list. Boundary j owns
// [phase_j, phase_{j+1}); the last boundary wraps through 2 pi.
void finalize_table(QuantizationTable& table, std::size_t state_count) {
  table.ranges.assign(state_count, {});
  table.range_lengths.assign(state_count, 0.0);
  const std::size_t n = table.boundaries.size();
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = table.boundaries[j];
    const double lo = b.phase_rad;
    const double hi = j + 1 < n ? table.boundaries[j + 1].phase_rad : table.boundaries[0].phase_rad + kTwoPi;
    if (hi <= kTwoPi) {
      table.ranges[b.index].emplace_back(lo, hi);
      table.range_lengths[b.index] += hi - lo;
    } else {
      table.ranges[b.index].emplace_back(lo, kTwoPi);
      table.range_lengths[b.index] += kTwoPi - lo;
      const double tail = hi - kTwoPi;
      if (tail > 0.0) {
        table.ranges[b.index].emplace_back(0.0, tail);
        table.range_lengths[b.index] += tail;
      }
    }
  }
  for (auto& intervals : table.ranges)
    std::sort(intervals.begin(), intervals.end());
}

QuantizationTable whole_circle_table(std::size_t state_count, std::size_t index) {
  QuantizationTable table;
  table.boundaries = {{0.0, index}};
  finalize_table(table, state_count);
  return table;
}

}  // namespace

ObjectiveWeights objective_weights(const AnalysisConstants& constants, const Codebook& codebook,
                                   std::size_t element_count) {
  if (codebook.entries.empty()) throw ConfigError("objective_weights: empty codebook");
  double sum_a = 0.0, sum_a2 = 0.0;
  for (const auto& e : codebook.entries) {
    sum_a += e.amplitude;
    sum_a2 += e.amplitude * e.amplitude;
  }
  ObjectiveWeights w;
  w.mean_amplitude_ratio = sum_a2 / sum_a;
  w.a_nlos = constants.kappa_nlos;
  w.a_los = static_cast<double>(element_count) * w.mean_amplitude_ratio * constants.kappa_los;
  return w;
}

std::vector<double> expected_phases(const SceneGeometry& scene, double alignment_constant_rad) {
  const double wave_number = kTwoPi / scene.config.wavelength_m;
  const std::size_t count = scene.element_count();
  std::vector<double> phases(count);
  for (std::size_t m = 0; m < count; ++m) {
    const double total = wave_number * (scene.bs_distances_m[m] + scene.user_distances_m[m]);
    phases[m] = wrap_angle(alignment_constant_rad - total);
  }
  return phases;
}

double p3_objective(const CodebookEntry& entry, double expected_phase_rad,
                    const ObjectiveWeights& weights) {
  return weights.a_nlos * entry.amplitude * entry.amplitude +
         weights.a_los * entry.amplitude * std::cos(entry.phase_rad - expected_phase_rad);
}

double quantization_loss(const CodebookEntry& entry, double expected_phase_rad) {
  return 1.0 - entry.amplitude * std::cos(entry.phase_rad - expected_phase_rad);
}

std::vector<double> curve_intersections(std::size_t i, std::size_t j, const Codebook& codebook,
                                        const ObjectiveWeights& weights) {
  if (i == j) throw std::invalid_argument("curve_intersections: need two distinct states");
  const auto& ei = codebook.entries.at(i);
  const auto& ej = codebook.entries.at(j);

  // a_los [C_cos cos(t) + C_sin sin(t)] = a_nlos (A_j^2 - A_i^2)
  const double c_sin = ei.amplitude * std::sin(ei.phase_rad) - ej.amplitude * std::sin(ej.phase_rad);
  const double c_cos = ei.amplitude * std::cos(ei.phase_rad) - ej.amplitude * std::cos(ej.phase_rad);
  const double radius = std::hypot(c_sin, c_cos);
  const double denom = weights.a_los * radius;
  if (!(denom > 0.0)) return {};  // identical phasors or no LoS weight: curves never cross

  const double rho =
      weights.a_nlos * (ej.amplitude * ej.amplitude - ei.amplitude * ei.amplitude) / denom;
  if (std::abs(rho) > 1.0) return {};  // one curve dominates everywhere

  const double offset = std::atan2(c_cos, c_sin);  // quadrant from the signs of C_sin, C_cos
  const double s = std::asin(rho);
  const double first = wrap_angle(s - offset);
  const double second = wrap_angle(kPi - s - offset);

  std::vector<double> roots{first, second};
  std::sort(roots.begin(), roots.end());
  if (roots[1] - roots[0] < kBoundaryEps) roots.pop_back();  // tangency
  return roots;
}

QuantizationTable build_lookup_table(const Codebook& codebook, const ObjectiveWeights& weights) {
  const std::size_t n = codebook.entries.size();
  if (n == 0) throw ConfigError("build_lookup_table: empty codebook");
  if (n == 1) return whole_circle_table(1, 0);

  double scale = 0.0;
  for (const auto& e : codebook.entries)
    scale = std::max(scale, std::abs(weights.a_nlos) * e.amplitude * e.amplitude +
                                std::abs(weights.a_los) * e.amplitude);
  const double tol = 1e-9 * scale;

  // candidate boundaries: intersections lying on the upper envelope
  std::vector<double> cuts;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (double theta : curve_intersections(i, j, codebook, weights)) {
        double best = p3_objective(codebook.entries[0], theta, weights);
        for (std::size_t s = 1; s < n; ++s)
          best = std::max(best, p3_objective(codebook.entries[s], theta, weights));
        if (p3_objective(codebook.entries[i], theta, weights) >= best - tol)
          cuts.push_back(theta);
      }
    }
  }

  if (cuts.empty())
    return whole_circle_table(n, exhaustive_quantize(codebook, 0.0, weights));

  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < kBoundaryEps; }),
             cuts.end());

  // each gap between consecutive cuts belongs to the arg-max at its midpoint
  const std::size_t gaps = cuts.size();
  std::vector<std::size_t> owner(gaps);
  for (std::size_t g = 0; g < gaps; ++g) {
    const double lo = cuts[g];
    const double hi = g + 1 < gaps ? cuts[g + 1] : cuts[0] + kTwoPi;
    owner[g] = exhaustive_quantize(codebook, wrap_angle(0.5 * (lo + hi)), weights);
  }

  // merge circular runs of gaps with the same owner
  std::size_t start = gaps;
  for (std::size_t g = 0; g < gaps; ++g) {
    if (owner[(g + gaps - 1) % gaps] != owner[g]) {
      start = g;
      break;
    }
  }
  if (start == gaps)  // a single state owns the whole circle
    return whole_circle_table(n, owner[0]);

  QuantizationTable table;
  for (std::size_t step = 0; step < gaps; ++step) {
    const std::size_t g = (start + step) % gaps;
    if (table.boundaries.empty() || table.boundaries.back().index != owner[g])
      table.boundaries.push_back({cuts[g], owner[g]});
  }
  std::sort(table.boundaries.begin(), table.boundaries.end(),
            [](const QuantizationTable::Boundary& a, const QuantizationTable::Boundary& b) {
              return a.phase_rad < b.phase_rad;
            });
  finalize_table(table, n);
  return table;
}

QuantizationTable nearest_phase_table(const Codebook& codebook) {
  const std::size_t n = codebook.entries.size();
  if (n == 0) throw ConfigError("nearest_phase_table: empty codebook");
  if (n == 1) return whole_circle_table(1, 0);

  QuantizationTable table;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double mid = 0.5 * (codebook.entries[i].phase_rad + codebook.entries[i + 1].phase_rad);
    table.boundaries.push_back({mid, i + 1});
  }
  // wrap midpoint between the last phase and the first one (0) across 2 pi
  table.boundaries.push_back({wrap_angle(0.5 * (codebook.entries[n - 1].phase_rad + kTwoPi)), 0});
  finalize_table(table, n);
  return table;
}

std::size_t quantize(const QuantizationTable& table, double expected_phase_rad) {
  if (table.boundaries.empty()) throw std::invalid_argument("quantize: empty table");
  const double x = wrap_angle(expected_phase_rad);
  auto it = std::upper_bound(
      table.boundaries.begin(), table.boundaries.end(), x,
      [](double v, const QuantizationTable::Boundary& b) { return v < b.phase_rad; });
  if (it == table.boundaries.begin()) return table.boundaries.back().index;
  return std::prev(it)->index;
}

std::size_t exhaustive_quantize(const Codebook& codebook, double expected_phase_rad,
                                const ObjectiveWeights& weights) {
  if (codebook.entries.empty()) throw ConfigError("exhaustive_quantize: empty codebook");
  std::size_t best = 0;
  double best_value = p3_objective(codebook.entries[0], expected_phase_rad, weights);
  for (std::size_t i = 1; i < codebook.entries.size(); ++i) {
    const double value = p3_objective(codebook.entries[i], expected_phase_rad, weights);
    if (value > best_value) {
      best = i;
      best_value = value;
    }
  }
  return best;
}

std::size_t nearest_phase_quantize(const Codebook& codebook, double expected_phase_rad) {
  if (codebook.entries.empty()) throw ConfigError("nearest_phase_quantize: empty codebook");
  std::size_t best = 0;
  double best_dist = kTwoPi;
  for (std::size_t i = 0; i < codebook.entries.size(); ++i) {
    double d = wrap_angle(codebook.entries[i].phase_rad - expected_phase_rad);
    d = std::min(d, kTwoPi - d);
    if (d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return best;
}

ReflectionConfig configure_ris(const SceneGeometry& scene, const Codebook& codebook,
                               const ObjectiveWeights& weights, Method method) {
  if (method == Method::kGroupQuery)
    return configure_with_table(scene, codebook, build_lookup_table(codebook, weights));

  const auto targets = expected_phases(scene, 0.0);
  ReflectionConfig rc;
  rc.amplitudes.resize(targets.size());
  rc.phases_rad.resize(targets.size());
  rc.indices.resize(targets.size());
  for (std::size_t m = 0; m < targets.size(); ++m) {
    switch (method) {
      case Method::kContinuous:
        rc.amplitudes[m] = 1.0;
        rc.phases_rad[m] = targets[m];
        rc.indices[m] = ReflectionConfig::kNoIndex;
        break;
      case Method::kNearestPhase:
      case Method::kExhaustive: {
        const std::size_t idx = method == Method::kNearestPhase
                                    ? nearest_phase_quantize(codebook, targets[m])
                                    : exhaustive_quantize(codebook, targets[m], weights);
        rc.amplitudes[m] = codebook.entries[idx].amplitude;
        rc.phases_rad[m] = codebook.entries[idx].phase_rad;
        rc.indices[m] = idx;
        break;
      }
      case Method::kGroupQuery:
        break;  // handled above
    }
  }
  return rc;
}

ReflectionConfig configure_with_table(const SceneGeometry& scene, const Codebook& codebook,
                                      const QuantizationTable& table) {
  const auto targets = expected_phases(scene, 0.0);
  ReflectionConfig rc;
  rc.amplitudes.resize(targets.size());
  rc.phases_rad.resize(targets.size());
  rc.indices.resize(targets.size());
  for (std::size_t m = 0; m < targets.size(); ++m) {
    const std::size_t idx = quantize(table, targets[m]);
    rc.amplitudes[m] = codebook.entries.at(idx).amplitude;
    rc.phases_rad[m] = codebook.entries[idx].phase_rad;
    rc.indices[m] = idx;
  }
  return rc;
}

}  // namespace rislink
