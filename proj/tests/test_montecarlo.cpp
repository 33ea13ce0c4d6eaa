// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "rislink/errors.hpp"
#include "rislink/montecarlo.hpp"
#include "rislink/rng.hpp"
#include "rislink/units.hpp"

using namespace rislink;

namespace {

ChannelPair pure_los_channel(const SceneGeometry& scene) {
  const LosPair los = los_components(scene);
  ChannelPair ch;
  ch.h = ch.h_los = los.h;
  ch.f = ch.f_los = los.f;
  ch.h_nlos.assign(scene.element_count(), {0.0, 0.0});
  ch.f_nlos.assign(scene.element_count(), {0.0, 0.0});
  return ch;
}

RicianConfig rician_of(double k) {
  RicianConfig rician;
  rician.k1 = rician.k2 = k;
  return rician;
}

Codebook uniform_bits(int bits, double omega) {
  const std::vector<double> amps(std::size_t{1} << bits, 1.0);
  return make_codebook(bits, omega, amps);
}

}  // namespace

TEST_CASE("run_trial evaluates the cascade product") {
  SUBCASE("single unit element") {
    ChannelPair ch;
    ch.h = {{1.0, 0.0}};
    ch.f = {{1.0, 0.0}};
    ReflectionConfig rc;
    rc.amplitudes = {1.0};
    rc.phases_rad = {0.0};
    rc.indices = {0};
    CHECK(run_trial(ch, rc, 1.0) == doctest::Approx(1.0));
  }
  SUBCASE("pure LoS with continuous phases is the coherent bound") {
    SceneConfig cfg;
    cfg.element_count = 144;
    const SceneGeometry scene = build_scene(cfg);
    const ChannelPair ch = pure_los_channel(scene);
    const ReflectionConfig rc = configure_ris(scene, {}, {}, Method::kContinuous);
    const AnalysisConstants c = analysis_constants(scene, rician_of(1.0), 1.0);
    const double p = run_trial(ch, rc, 1.0);
    CHECK(p == doctest::Approx(c.eta_los * 144.0 * 144.0).epsilon(1e-9));
  }
  SUBCASE("random pattern matches a direct triple-product recomputation") {
    SceneConfig cfg;
    cfg.element_count = 50;
    const SceneGeometry scene = build_scene(cfg);
    Rng rng(62);
    const LosPair los = los_components(scene);
    const NlosPair nlos = nlos_components(scene, rician_of(2.0), rng);
    const ChannelPair ch = assemble_channel(los, nlos, rician_of(2.0));
    ReflectionConfig rc;
    for (std::size_t m = 0; m < 50; ++m) {
      rc.amplitudes.push_back(rng.uniform(0.1, 1.0));
      rc.phases_rad.push_back(rng.uniform(0.0, kTwoPi));
      rc.indices.push_back(0);
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t m = 0; m < 50; ++m) {
      const std::complex<double> phi =
          rc.amplitudes[m] * std::exp(std::complex<double>(0.0, -rc.phases_rad[m]));
      sum += ch.f[m] * phi * ch.h[m];
    }
    const double direct = 2.0 * std::norm(sum);
    CHECK(run_trial(ch, rc, 2.0) == doctest::Approx(direct).epsilon(1e-12));
  }
  SUBCASE("dimension mismatch is rejected") {
    ChannelPair ch;
    ch.h = {{1.0, 0.0}, {1.0, 0.0}};
    ch.f = {{1.0, 0.0}, {1.0, 0.0}};
    ReflectionConfig rc;
    rc.amplitudes = {1.0};
    rc.phases_rad = {0.0};
    rc.indices = {0};
    CHECK_THROWS_AS(run_trial(ch, rc, 1.0), ConfigError);
  }
}

TEST_CASE("run_point") {
  PointSpec spec;
  spec.scene.element_count = 64;
  spec.rician = rician_of(4.0);
  spec.method = Method::kContinuous;
  spec.transmit_power_w = 0.1;
  spec.master_seed = 5;

  SUBCASE("single trial reports an undefined standard error as zero") {
    spec.trials = 1;
    const PointResult r = run_point(spec);
    CHECK_FALSE(r.stderr_defined);
    CHECK(r.stderr_w == 0.0);
    CHECK(r.mean_w > 0.0);
  }
  SUBCASE("pure LoS with continuous phases at a pinned user has vanishing spread") {
    spec.rician = rician_of(kMaxRicianK);
    spec.randomize_user_angle = false;
    spec.trials = 200;
    const PointResult r = run_point(spec);
    const SceneGeometry scene = build_scene(spec.scene);
    const AnalysisConstants c = analysis_constants(scene, spec.rician, spec.transmit_power_w);
    CHECK(r.mean_w == doctest::Approx(c.eta_los * 64.0 * 64.0).epsilon(1e-6));
    CHECK(r.stderr_w / r.mean_w < 1e-6);
  }
  SUBCASE("K = 4 sample mean matches the continuous closed form") {
    spec.scene.element_count = 256;
    spec.trials = 2000;
    const PointResult r = run_point(spec);
    // oracle: closed form averaged over the quarter-circle user placement
    // (the common-amplitude reference element moves with the user)
    const int quad_points = 360;
    double target = 0.0;
    for (int i = 0; i <= quad_points; ++i) {
      SceneConfig c_angle = spec.scene;
      c_angle.user_azimuth_rad = kPi / 2.0 * static_cast<double>(i) / quad_points;
      const SceneGeometry scene = build_scene(c_angle);
      const AnalysisConstants c = analysis_constants(scene, spec.rician, spec.transmit_power_w);
      const double weight = (i == 0 || i == quad_points) ? 0.5 : 1.0;
      target += weight * larp_max_continuous(c, 256);
    }
    target /= static_cast<double>(quad_points);
    CHECK(std::abs(r.mean_w - target) <= 3.0 * r.stderr_w);
  }
}

TEST_CASE("run_sweep") {
  ExperimentSpec spec;
  spec.scene.element_count = 64;
  spec.rician = rician_of(4.0);
  spec.transmit_power_w = 0.1;
  spec.codebooks = {{"k2", 0.0, uniform_bits(2, sufficient_capability(2))}};
  spec.methods = {Method::kGroupQuery};
  spec.variable = SweepVariable::kDecrementDeg;
  spec.grid = {0.0, 60.0, 120.0};
  spec.trials = 200;
  spec.seed = 9;

  SUBCASE("reruns are bit-identical") {
    const SweepResult a = run_sweep(spec);
    const SweepResult b = run_sweep(spec);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].mean_w == b.rows[i].mean_w);
      CHECK(a.rows[i].stderr_w == b.rows[i].stderr_w);
      CHECK(a.rows[i].closed_form_w == b.rows[i].closed_form_w);
    }
  }
  SUBCASE("loss estimates are stable across seeds") {
    std::vector<double> eps;
    std::vector<double> stderr_db;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      ExperimentSpec s = spec;
      s.grid = {60.0};
      s.trials = 300;
      s.seed = seed;
      const SweepRow row = run_sweep(s).rows.at(0);
      eps.push_back(row.eps_db);
      stderr_db.push_back(10.0 / std::log(10.0) * row.stderr_w / row.mean_w);
    }
    double pooled = 0.0;
    for (double s : stderr_db) pooled += s * s;
    pooled = std::sqrt(pooled / 5.0);
    const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
    CHECK(*hi - *lo <= 3.0 * pooled * 2.0);
  }
  SUBCASE("matches the closed form within 0.3 dB at desk scale") {
    ExperimentSpec s = spec;
    s.scene.element_count = 256;
    s.trials = 2000;
    s.grid = {60.0};
    const SweepRow row = run_sweep(s).rows.at(0);
    const double mc_db = watt_to_dbm(row.mean_w);
    const double cf_db = watt_to_dbm(row.closed_form_w);
    CHECK(std::abs(mc_db - cf_db) <= 0.3);
  }
  SUBCASE("group query dominates nearest phase on non-uniform amplitudes") {
    ExperimentSpec s = spec;
    const double amps_db[] = {0.0, -6.0, -10.0, -3.0};
    s.codebooks = {{"k2", 0.0, make_codebook_db(2, sufficient_capability(2), amps_db)}};
    s.methods = {Method::kGroupQuery, Method::kNearestPhase};
    s.scene.element_count = 128;
    s.trials = 400;
    s.grid = {30.0, 120.0, 180.0};
    const SweepResult result = run_sweep(s);
    REQUIRE(result.rows.size() == 6);
    for (std::size_t i = 0; i < result.rows.size(); i += 2) {
      const SweepRow& gq = result.rows[i];
      const SweepRow& np = result.rows[i + 1];
      REQUIRE(gq.method == Method::kGroupQuery);
      REQUIRE(np.method == Method::kNearestPhase);
      CHECK(gq.mean_w >= np.mean_w - gq.stderr_w - np.stderr_w);
    }
  }
  SUBCASE("element sweep rejects fractional grid values") {
    ExperimentSpec s = spec;
    s.variable = SweepVariable::kElements;
    s.grid = {64.5};
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
  }
  SUBCASE("decrement sweep rejects a vanishing capability") {
    ExperimentSpec s = spec;
    s.grid = {270.0};
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
  }
}

TEST_CASE("method and name mapping round-trips") {
  for (Method m : {Method::kContinuous, Method::kGroupQuery, Method::kNearestPhase,
                   Method::kExhaustive}) {
    CHECK(method_from_name(method_name(m)) == m);
  }
  CHECK_THROWS_AS(method_from_name("zigzag"), ConfigError);
}
