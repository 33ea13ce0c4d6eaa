// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "rislink/analysis.hpp"
#include "rislink/codebook.hpp"
#include "rislink/geometry.hpp"

namespace rislink {

enum class Method { kContinuous, kGroupQuery, kNearestPhase, kExhaustive };

/// Weights of the per-element selection objective
///   a_nlos A^2 + a_los A cos(theta - theta*)
/// with a_nlos = kappa_nlos and a_los = M * Abar * kappa_los, where
/// Abar = sum A_i^2 / sum A_i over the codebook.
struct ObjectiveWeights {
  double a_nlos = 0.0;
  double a_los = 1.0;
  double mean_amplitude_ratio = 1.0;  ///< Abar
};

ObjectiveWeights objective_weights(const AnalysisConstants& constants, const Codebook& codebook,
                                   std::size_t element_count);

/// Per-element expected phase shifts theta*_m = (C - phi_m) mod 2 pi with
/// phi_m = 2 pi (D_m + d_m) / lambda. C is an arbitrary alignment constant;
/// the simulator uses C = 0 throughout.
std::vector<double> expected_phases(const SceneGeometry& scene, double alignment_constant_rad);

double p3_objective(const CodebookEntry& entry, double expected_phase_rad,
                    const ObjectiveWeights& weights);

/// Quantisation loss 1 - A cos(theta_i - theta*): distance between the
/// desired unit coefficient and the projection of the quantised one onto it.
double quantization_loss(const CodebookEntry& entry, double expected_phase_rad);

/// All phases in [0, 2 pi) where the objective curves of entries i and j
/// cross; 0, 1 or 2 solutions, ascending. Both branches of the underlying
/// sine equation are returned. Empty when one curve dominates everywhere.
std::vector<double> curve_intersections(std::size_t i, std::size_t j, const Codebook& codebook,
                                        const ObjectiveWeights& weights);

/// Partition of the expected-phase circle into per-state ranges c_i. Each
/// boundary carries the state index that takes effect at that phase
/// (left-closed intervals). range_lengths are the mu_i; they sum to 2 pi.
struct QuantizationTable {
  struct Boundary {
    double phase_rad = 0.0;
    std::size_t index = 0;
  };
  std::vector<Boundary> boundaries;                           ///< ascending by phase
  std::vector<std::vector<std::pair<double, double>>> ranges; ///< c_i, [lo, hi) intervals
  std::vector<double> range_lengths;                          ///< mu_i
};

/// Builds the lookup table: collects pairwise curve intersections, keeps the
/// ones lying on the upper envelope (within relative tolerance 1e-9), and
/// assigns every gap between consecutive boundaries to the state maximising
/// the objective at the gap midpoint. For any query phase the table returns
/// the same state as exhaustive maximisation, up to ties.
QuantizationTable build_lookup_table(const Codebook& codebook, const ObjectiveWeights& weights);

/// Nearest-phase partition of the circle (range boundaries at midpoints
/// between adjacent grid phases); used for closed-form evaluation of the
/// nearest-phase baseline.
QuantizationTable nearest_phase_table(const Codebook& codebook);

/// Table lookup, O(log 2^k): index of the range containing the wrapped
/// query phase; boundaries are left-closed.
std::size_t quantize(const QuantizationTable& table, double expected_phase_rad);

/// Reference solver: evaluates the objective for every state and returns the
/// arg-max, ties to the lowest index.
std::size_t exhaustive_quantize(const Codebook& codebook, double expected_phase_rad,
                                const ObjectiveWeights& weights);

/// Baseline: state with minimal wrapped phase distance, ties to the lowest
/// index. Ignores amplitudes.
std::size_t nearest_phase_quantize(const Codebook& codebook, double expected_phase_rad);

/// Per-element reflection coefficients A_m e^{-j theta_m}.
struct ReflectionConfig {
  static constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

  std::vector<double> amplitudes;
  std::vector<double> phases_rad;
  std::vector<std::size_t> indices;  ///< codebook state per element; kNoIndex when continuous

  std::size_t size() const { return amplitudes.size(); }
};

/// Chooses every element's coefficient for the scene's expected phases
/// (C = 0). kContinuous bypasses the codebook (A = 1, theta = theta*).
ReflectionConfig configure_ris(const SceneGeometry& scene, const Codebook& codebook,
                               const ObjectiveWeights& weights, Method method);

/// Group-query fast path against a prebuilt table.
ReflectionConfig configure_with_table(const SceneGeometry& scene, const Codebook& codebook,
                                      const QuantizationTable& table);

}  // namespace rislink
