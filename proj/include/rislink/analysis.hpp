// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "rislink/channel.hpp"
#include "rislink/codebook.hpp"
#include "rislink/geometry.hpp"

namespace rislink {

struct QuantizationTable;  // beamformer.hpp

/// Long-term constants of the link. The eta factors are the per-term power
/// coefficients of the received-power expectation, i.e. the squared products
/// of the amplitude gains that enter the generated channels:
///   eta_los   = Pt * Ga * D_1^-alpha * d_1^-alpha
///   eta_nlos1 = Pt * Ga * D_1^-alpha * L(d_1)^2
///   eta_nlos2 = Pt * d_1^-alpha * L(D_1)^2
///   eta_nlos3 = Pt * L(D_1)^2 * L(d_1)^2
/// and the kappa factors fold in the Rician weights:
///   kappa_los  = K1 K2 eta_los / ((K1+1)(K2+1))
///   kappa_nlos = (K1 eta_nlos1 + K2 eta_nlos2 + eta_nlos3) / ((K1+1)(K2+1))
struct AnalysisConstants {
  double eta_los = 0.0;
  double eta_nlos1 = 0.0;
  double eta_nlos2 = 0.0;
  double eta_nlos3 = 0.0;
  double kappa_los = 0.0;
  double kappa_nlos = 0.0;
  double transmit_power_w = 1.0;
};

AnalysisConstants analysis_constants(const SceneGeometry& scene, const RicianConfig& rician,
                                     double transmit_power_w);

/// Long-term average received power of a fixed reflection pattern:
///   kappa_nlos * sum A_m^2 + kappa_los * |sum A_m e^{-j(phi_m + theta_m)}|^2
/// where total_phases_rad[m] = phi_m + theta_m.
double larp(const AnalysisConstants& constants, std::span<const double> amplitudes,
            std::span<const double> total_phases_rad);

/// Continuous-phase, unit-amplitude optimum: kappa_nlos M + kappa_los M^2.
double larp_max_continuous(const AnalysisConstants& constants, std::size_t element_count);

/// Parameters of the uniform-amplitude expectation in the insufficient
/// branch: interval edges a, b of the quantisation-error density and its two
/// density levels.
struct Theorem1Params {
  double a = 0.0;   ///< pi - omega/2
  double b = 0.0;   ///< omega / (2 (2^k - 1))
  double p1 = 0.0;  ///< 2^k / (2 pi)
  double p2 = 0.0;  ///< 1 / (2 pi)
};

Theorem1Params theorem1_params(int bits, double capability_rad);

/// Expected LARP of a k-bit uniform-amplitude (A = 1) system with nearest-
/// phase selection, assuming the expected phase is uniform on [0, 2 pi):
///   sufficient:   kappa_nlos M + kappa_los M^2 (2^{2k}/pi^2) sin^2(pi/2^k)
///   insufficient: kappa_nlos M + kappa_los M^2 * 4 [P1 sin b + P2 (sin a - sin b)]^2
double expected_larp_uniform(const AnalysisConstants& constants, std::size_t element_count,
                             int bits, double capability_rad);

/// Expected LARP of an arbitrary codebook under a quantisation table
/// (phase-range partition c_i):
///   kappa_nlos M sum_i (mu_i / 2 pi) A_i^2
///     + kappa_los M^2 / (4 pi^2) * |sum_i A_i (C_i + j S_i)|^2
/// with S_i, C_i the sine/cosine integrals over the error set c_i - theta_i,
/// evaluated analytically per interval.
double expected_larp_quantized(const AnalysisConstants& constants, std::size_t element_count,
                               const Codebook& codebook, const QuantizationTable& table);

/// Closed form for a two-state element over pure LoS channels:
///   eta_los M^2 / pi^2 * [A1^2 + A2^2 - 2 A1 A2 cos(min(omega, pi))]
double expected_larp_two_state_los(double eta_los, std::size_t element_count, double a1,
                                   double a2, double capability_rad);

/// Loss factor in dB of an expected LARP against the continuous optimum:
/// 10 log10(expected / maximum); <= 0 for any realisable configuration.
double loss_factor_db(double expected_larp, double larp_max);

enum class LarpSource { kClosedForm, kMonteCarlo };

struct LarpReport {
  double larp_w = 0.0;
  double larp_dbm = 0.0;
  double loss_factor_db = 0.0;
  std::string method;
  LarpSource source = LarpSource::kClosedForm;
};

/// Bundles one LARP value with its dBm form and loss factor against the
/// continuous optimum.
LarpReport make_larp_report(double larp_w, double larp_max_w, std::string method,
                            LarpSource source);

}  // namespace rislink
