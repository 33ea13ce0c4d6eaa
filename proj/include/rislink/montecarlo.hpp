// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rislink/analysis.hpp"
#include "rislink/beamformer.hpp"
#include "rislink/channel.hpp"
#include "rislink/codebook.hpp"
#include "rislink/geometry.hpp"

namespace rislink {

/// Instantaneous received power of one channel realisation:
///   P_r = Pt |sum_m f_m A_m e^{-j theta_m} h_m|^2
/// The cascade is the plain (unconjugated) product, so the element phases add
/// as -(2 pi (D_m + d_m)/lambda + theta_m).
double run_trial(const ChannelPair& channel, const ReflectionConfig& reflection,
                 double transmit_power_w);

struct PointSpec {
  SceneConfig scene;   ///< template; user azimuth is redrawn per trial unless pinned
  RicianConfig rician;
  Codebook codebook;   ///< ignored by kContinuous
  Method method = Method::kContinuous;
  double transmit_power_w = 0.1;
  int trials = 2000;
  std::uint64_t master_seed = 1;
  std::uint64_t point_key = 0;
  bool randomize_user_angle = true;  ///< uniform on the [0, 90 deg] quarter circle
};

struct PointResult {
  double mean_w = 0.0;
  double stderr_w = 0.0;
  int trials = 0;
  bool stderr_defined = false;  ///< false when trials < 2 (stderr reported as 0)
};

/// Ensemble estimate of the LARP: mean of run_trial over independent trials.
/// Each trial redraws the user position (quarter circle) and the NLoS
/// components from the (master_seed, point_key, trial) substream, rebuilds
/// the scene, and reconfigures the RIS from the new expected phases. The
/// selection table and objective weights come from the template scene once
/// per point; they are long-term constants of the system.
PointResult run_point(const PointSpec& spec);

enum class SweepVariable { kElements, kDecrementDeg, kUserAngleDeg, kCodebookSet };

struct CodebookSpec {
  std::string label;
  double value = 0.0;  ///< numeric tag; becomes the sweep value for codebook-set sweeps
  Codebook codebook;
};

struct ExperimentSpec {
  SceneConfig scene;
  RicianConfig rician;
  double transmit_power_w = 0.1;
  std::vector<CodebookSpec> codebooks;
  std::vector<Method> methods;
  SweepVariable variable = SweepVariable::kDecrementDeg;
  std::vector<double> grid;
  int trials = 2000;
  std::uint64_t seed = 1;
};

struct SweepRow {
  double sweep_value = 0.0;
  double mean_w = 0.0;
  double stderr_w = 0.0;
  double closed_form_w = 0.0;
  double eps_db = 0.0;  ///< 10 log10(mean / continuous optimum)
  Method method = Method::kContinuous;
  int bits = 0;
  double omega_deg = 360.0;
  std::string codebook_label;
  int trials = 0;
  bool stderr_defined = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::uint64_t seed = 0;
};

/// Runs one point per grid value for every (method, codebook) combination.
/// Trials at the same grid index share random substreams across methods and
/// codebooks, so method comparisons are paired. The closed-form column is the
/// continuous optimum for kContinuous rows, otherwise the expected LARP of
/// the method's phase-range partition.
SweepResult run_sweep(const ExperimentSpec& spec);

const char* method_name(Method method);
Method method_from_name(const std::string& name);

}  // namespace rislink
