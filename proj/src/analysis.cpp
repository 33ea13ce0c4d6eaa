// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include "rislink/analysis.hpp"

#include <cmath>
#include <complex>

#include "rislink/beamformer.hpp"
#include "rislink/errors.hpp"
#include "rislink/units.hpp"

namespace rislink {

AnalysisConstants analysis_constants(const SceneGeometry& scene, const RicianConfig& rician,
                                     double transmit_power_w) {
  if (!(transmit_power_w > 0.0))
    throw ConfigError("analysis_constants: transmit power must be positive");
  const auto& cfg = scene.config;
  const double d_bs = scene.bs_distances_m[0];
  const double d_user = scene.user_distances_m[0];
  const double loss_bs = std::pow(d_bs, -cfg.path_loss_exponent);
  const double loss_user = std::pow(d_user, -cfg.path_loss_exponent);
  const double gain_bs = nlos_gain(rician.nlos, d_bs, cfg.wavelength_m);
  const double gain_user = nlos_gain(rician.nlos, d_user, cfg.wavelength_m);

  AnalysisConstants c;
  c.transmit_power_w = transmit_power_w;
  c.eta_los = transmit_power_w * cfg.antenna_gain * loss_bs * loss_user;
  c.eta_nlos1 = transmit_power_w * cfg.antenna_gain * loss_bs * gain_user * gain_user;
  c.eta_nlos2 = transmit_power_w * loss_user * gain_bs * gain_bs;
  c.eta_nlos3 = transmit_power_w * gain_bs * gain_bs * gain_user * gain_user;

  const double k1 = rician.k1;
  const double k2 = rician.k2;
  const double denom = (k1 + 1.0) * (k2 + 1.0);
  c.kappa_los = k1 * k2 * c.eta_los / denom;
  c.kappa_nlos = (k1 * c.eta_nlos1 + k2 * c.eta_nlos2 + c.eta_nlos3) / denom;
  return c;
}

double larp(const AnalysisConstants& constants, std::span<const double> amplitudes,
            std::span<const double> total_phases_rad) {
  if (amplitudes.size() != total_phases_rad.size())
    throw ConfigError("larp: amplitude/phase length mismatch");
  double amp_sq = 0.0;
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t m = 0; m < amplitudes.size(); ++m) {
    amp_sq += amplitudes[m] * amplitudes[m];
    sum += std::polar(amplitudes[m], -total_phases_rad[m]);
  }
  return constants.kappa_nlos * amp_sq + constants.kappa_los * std::norm(sum);
}

double larp_max_continuous(const AnalysisConstants& constants, std::size_t element_count) {
  const double m = static_cast<double>(element_count);
  return constants.kappa_nlos * m + constants.kappa_los * m * m;
}

Theorem1Params theorem1_params(int bits, double capability_rad) {
  const double states = static_cast<double>(std::size_t{1} << bits);
  Theorem1Params p;
  p.a = kPi - 0.5 * capability_rad;
  p.b = capability_rad / (2.0 * (states - 1.0));
  p.p1 = states / kTwoPi;
  p.p2 = 1.0 / kTwoPi;
  return p;
}

double expected_larp_uniform(const AnalysisConstants& constants, std::size_t element_count,
                             int bits, double capability_rad) {
  if (bits < 1) throw ConfigError("expected_larp_uniform: bits must be >= 1");
  if (!(capability_rad > 0.0) || capability_rad > kTwoPi + 1e-12)
    throw ConfigError("expected_larp_uniform: capability must be in (0, 2*pi]");
  const double states = static_cast<double>(std::size_t{1} << bits);
  double factor;
  if (capability_rad >= sufficient_capability(bits)) {
    const double s = std::sin(kPi / states);
    factor = states * states / (kPi * kPi) * s * s;
  } else {
    const Theorem1Params p = theorem1_params(bits, capability_rad);
    const double inner = p.p1 * std::sin(p.b) + p.p2 * (std::sin(p.a) - std::sin(p.b));
    factor = 4.0 * inner * inner;
  }
  const double m = static_cast<double>(element_count);
  return constants.kappa_nlos * m + constants.kappa_los * m * m * factor;
}

double expected_larp_quantized(const AnalysisConstants& constants, std::size_t element_count,
                               const Codebook& codebook, const QuantizationTable& table) {
  const std::size_t n = codebook.entries.size();
  if (table.ranges.size() != n || table.range_lengths.size() != n)
    throw ConfigError("expected_larp_quantized: table does not match the codebook");

  double mean_amp_sq = 0.0;
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& entry = codebook.entries[i];
    mean_amp_sq += table.range_lengths[i] / kTwoPi * entry.amplitude * entry.amplitude;
    // sine/cosine integrals over the error set d_i = c_i - theta_i
    double sin_integral = 0.0;
    double cos_integral = 0.0;
    for (const auto& [lo, hi] : table.ranges[i]) {
      const double a = lo - entry.phase_rad;
      const double b = hi - entry.phase_rad;
      sin_integral += std::cos(a) - std::cos(b);
      cos_integral += std::sin(b) - std::sin(a);
    }
    sum += entry.amplitude * std::complex<double>(cos_integral, sin_integral);
  }
  const double m = static_cast<double>(element_count);
  return constants.kappa_nlos * m * mean_amp_sq +
         constants.kappa_los * m * m / (4.0 * kPi * kPi) * std::norm(sum);
}

double expected_larp_two_state_los(double eta_los, std::size_t element_count, double a1,
                                   double a2, double capability_rad) {
  if (!(a1 > 0.0) || a1 > 1.0 || !(a2 >= 0.0) || a2 > 1.0)
    throw ConfigError("expected_larp_two_state_los: amplitudes must be in (0, 1]");
  if (!(capability_rad > 0.0) || capability_rad > kTwoPi + 1e-12)
    throw ConfigError("expected_larp_two_state_los: capability must be in (0, 2*pi]");
  const double w = std::min(capability_rad, kPi);
  const double m = static_cast<double>(element_count);
  return eta_los * m * m / (kPi * kPi) *
         (a1 * a1 + a2 * a2 - 2.0 * a1 * a2 * std::cos(w));
}

double loss_factor_db(double expected_larp, double larp_max) {
  if (!(larp_max > 0.0)) throw ConfigError("loss_factor_db: maximum LARP must be positive");
  return 10.0 * std::log10(expected_larp / larp_max);
}

LarpReport make_larp_report(double larp_w, double larp_max_w, std::string method,
                            LarpSource source) {
  LarpReport report;
  report.larp_w = larp_w;
  report.larp_dbm = watt_to_dbm(larp_w);
  report.loss_factor_db = loss_factor_db(larp_w, larp_max_w);
  report.method = std::move(method);
  report.source = source;
  return report;
}

}  // namespace rislink
