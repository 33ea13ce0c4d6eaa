// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "rislink/geometry.hpp"
#include "rislink/rng.hpp"

namespace rislink {

enum class NlosGainModel { kUmaNlos, kFixed };

struct NlosGain {
  NlosGainModel model = NlosGainModel::kUmaNlos;
  double fixed = 1.0;  ///< linear amplitude gain used by kFixed
};

/// Stand-in for the pure-LoS limit when a K factor is configured as infinite.
inline constexpr double kMaxRicianK = 1e9;

struct RicianConfig {
  double k1 = 4.0;  ///< Rician K of the BS -> RIS channel, linear
  double k2 = 4.0;  ///< Rician K of the RIS -> user channel, linear
  NlosGain nlos;
};

/// Linear amplitude gain of the NLoS component at the given link distance.
/// The UMa variant evaluates the TR 38.901 urban-macro NLOS path loss at the
/// default heights (site 25 m, terminal 1.5 m, effective environment 1 m) and
/// converts the dB power loss to amplitude via 10^(-PL/20). Distances whose
/// ground projection falls outside the model's 10 m .. 5 km validity range
/// are clamped and reported through `clamped`.
double nlos_gain(const NlosGain& gain, double distance_m, double wavelength_m,
                 bool* clamped = nullptr);

struct NlosPair {
  std::vector<std::complex<double>> h;
  std::vector<std::complex<double>> f;
};

/// Small-scale NLoS components: h[m] = L(D_1) g_m, f[m] = L(d_1) b_m with
/// g, b i.i.d. circularly-symmetric complex Gaussian of unit variance.
/// All h draws precede all f draws in the stream.
NlosPair nlos_components(const SceneGeometry& scene, const RicianConfig& rician, Rng& rng);

struct ChannelPair {
  std::vector<std::complex<double>> h, f;
  std::vector<std::complex<double>> h_los, f_los;
  std::vector<std::complex<double>> h_nlos, f_nlos;

  std::size_t size() const { return h.size(); }
};

/// Rician mixture, elementwise:
///   h = sqrt(K1/(K1+1)) h_los + sqrt(1/(K1+1)) h_nlos   (same for f with K2)
ChannelPair assemble_channel(const LosPair& los, const NlosPair& nlos,
                             const RicianConfig& rician);

}  // namespace rislink
