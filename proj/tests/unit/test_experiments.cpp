// SPDX-License-Identifier: Apache-2.0
//
// ucmvdr: unit circle rectified MVDR beamforming for uniform linear arrays
// Copyright (C) 2026 The ucmvdr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "ucmvdr/experiments.hpp"
#include "ucmvdr/rng.hpp"
#include "ucmvdr/uc_rectify.hpp"

using namespace ucmvdr;

namespace {

UlaScenario single_interferer(int n = 11, double inr_db = 40.0) {
  return UlaScenario(UlaGeometry(n), 0.0, {SourceSpec(3.0 / n, db_to_linear(inr_db))}, 1.0);
}

ExperimentConfig make_config(int trials, std::vector<BeamformerSpec> bfs, int snapshots = 11,
                             std::uint64_t seed = 1234) {
  ExperimentConfig c{single_interferer(), snapshots, trials, std::move(bfs), seed, false, {}};
  return c;
}

const BeamformerSpec kCbf{BeamformerKind::kCbf, 0.0};
const BeamformerSpec kSmi{BeamformerKind::kSmi, 0.0};
const BeamformerSpec kUc{BeamformerKind::kUc, 0.0};
const BeamformerSpec kMatched{BeamformerKind::kDlMatched, 0.0};
const BeamformerSpec kOracle{BeamformerKind::kDlOracle, 0.0};

// Sample covariance of trial t, rebuilt from the public pieces.
CovarianceMatrix scm_of(const ExperimentConfig& c, int t) {
  return sample_covariance(generate_snapshots(c.scenario, c.num_snapshots,
                                              substream_seed(c.base_seed, t)));
}

double median_lower(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  return x[(x.size() - 1) / 2];
}

}  // namespace

TEST_CASE("beamformer labels") {
  CHECK(kCbf.label() == "cbf");
  CHECK(kUc.label() == "uc");
  CHECK(BeamformerSpec::fixed(10.0).label() == "dl_fixed_10dB");
  CHECK(kMatched.is_loaded());
  CHECK_FALSE(kSmi.is_loaded());
}

TEST_CASE("log grid") {
  const auto g = log_dl_grid(-10.0, 10.0, 3);
  CHECK(g[0] == doctest::Approx(0.1));
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(g[2] == doctest::Approx(10.0));
  CHECK(default_oracle_grid().size() == 121);
  CHECK_THROWS_AS(log_dl_grid(1.0, 0.0, 3), std::invalid_argument);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(make_config(10, {kSmi}).validate());
  CHECK_THROWS_AS(make_config(10, {kSmi}, 10).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_config(10, {kUc}, 5).validate(), std::invalid_argument);
  CHECK_NOTHROW(make_config(10, {kCbf, BeamformerSpec::fixed(1.0)}, 5).validate());
  CHECK_THROWS_AS(make_config(10, {kSmi, kSmi}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_config(0, {kSmi}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_config(10, {}).validate(), std::invalid_argument);
  ExperimentConfig wide = make_config(10, {kUc});
  wide.scenario = UlaScenario(UlaGeometry(11, 0.4), 0.0, {SourceSpec(0.3, 100.0)});
  CHECK_THROWS_AS(wide.validate(), std::invalid_argument);
  wide.beamformers = {kSmi};
  CHECK_NOTHROW(wide.validate());
  ExperimentConfig bad_grid = make_config(10, {kOracle});
  bad_grid.oracle_grid = {1.0, -1.0};
  CHECK_THROWS_AS(bad_grid.validate(), std::invalid_argument);
  // Validation errors surface before any trial runs.
  CHECK_THROWS_AS(run_experiment(make_config(10, {kSmi}, 3)), std::invalid_argument);
}

TEST_CASE("runs are reproducible and independent of worker count") {
  ExperimentConfig c = make_config(40, {kCbf, kSmi, kUc, kMatched, BeamformerSpec::fixed(10.0)});
  c.capture_zeros = true;
  const ExperimentResult serial = run_experiment_serial(c);
  const ExperimentResult one = run_experiment(c, {1});
  const ExperimentResult four = run_experiment(c, {4});
  CHECK(serial.trials == one.trials);
  CHECK(serial.trials == four.trials);
  CHECK(serial.resolved_delta[3] == four.resolved_delta[3]);
  const ExperimentResult again = run_experiment(c, {4});
  CHECK(again.trials == four.trials);
  c.base_seed += 1;
  CHECK_FALSE(run_experiment(c).trials == serial.trials);
}

TEST_CASE("trial metrics match a direct recomputation") {
  const ExperimentConfig c = make_config(10, {kCbf, kSmi, kUc, BeamformerSpec::fixed(3.0)});
  const ExperimentResult r = run_experiment(c);
  REQUIRE(r.trials.size() == 10);
  CHECK(r.failed_trials == 0);
  for (int t = 0; t < 10; ++t) {
    const CovarianceMatrix s = scm_of(c, t);
    const WeightVector smi = mvdr_weights(s, c.scenario.geometry(), 0.0);
    const WeightVector dl = mvdr_weights(diagonal_load(s, DlFactor(3.0)), c.scenario.geometry(), 0.0);
    const UcResult uc = uc_mvdr_weights(smi);
    const auto& m = r.trials[t].metrics;
    CHECK(m[0].wng == doctest::Approx(11.0));
    CHECK(m[1].interferer_power == doctest::Approx(output_powers(smi, c.scenario).interferer_power));
    CHECK(m[2].wng == doctest::Approx(white_noise_gain(uc.weights)));
    CHECK(m[3].noise_power == doctest::Approx(output_powers(dl, c.scenario).noise_power));
  }
  REQUIRE(r.ensemble);
  CHECK(r.ensemble->wng == doctest::Approx(10.473).epsilon(5e-4));
}

TEST_CASE("UC nulls are perfect on every trial") {
  const ExperimentResult r = run_experiment(make_config(200, {kUc}));
  for (const TrialRecord& t : r.trials) {
    REQUIRE_FALSE(t.failed);
    CHECK(t.uc_max_null_depth < 1e-20);
  }
}

TEST_CASE("run aborts when too many trials fail") {
  ExperimentConfig c = make_config(50, {kSmi});
  c.scenario = UlaScenario(UlaGeometry(11), 0.0, {SourceSpec(3.0 / 11.0, 1e4)}, 1e-20);
  CHECK_THROWS_AS(run_experiment(c), RunAborted);
  // Loaded beamformers on the same data are fine; the ensemble reference is
  // itself singular here and is left out.
  c.beamformers = {BeamformerSpec::fixed(1.0)};
  const ExperimentResult loaded = run_experiment(c);
  CHECK(loaded.failed_trials == 0);
  CHECK_FALSE(loaded.ensemble);
}

TEST_CASE("sample MVDR zeros cluster near the interferer") {
  // N = 11, L = 10N, 40 dB: one zero sits close to exp(j pi u_I).
  ExperimentConfig c = make_config(1000, {kSmi}, 110, 2);
  c.capture_zeros = true;
  const ExperimentResult r = run_experiment(c);
  const Complex zi = std::polar(1.0, kPi * 3.0 / 11.0);
  RunningMoments dist;
  for (const TrialRecord& t : r.trials) {
    double best = 1e9;
    for (const Complex& z : t.zeros[0].zeros) best = std::min(best, std::abs(z - zi));
    dist.add(best);
  }
  CHECK(dist.mean() < 0.125);
}

TEST_CASE("UC beats SMI and matched DL in median interferer power") {
  const ExperimentConfig c = make_config(500, {kSmi, kUc, kMatched}, 11, 7);
  const ExperimentResult r = run_experiment(c);
  const auto s = summarize(c, r);
  std::vector<double> pi_smi, pi_uc, pi_dl, wng_uc, wng_dl;
  for (const TrialRecord& t : r.trials) {
    pi_smi.push_back(linear_to_db(t.metrics[0].interferer_power));
    pi_uc.push_back(linear_to_db(t.metrics[1].interferer_power));
    pi_dl.push_back(linear_to_db(t.metrics[2].interferer_power));
    wng_uc.push_back(t.metrics[1].wng);
    wng_dl.push_back(t.metrics[2].wng);
  }
  CHECK(median_lower(pi_uc) < median_lower(pi_smi) - 10.0);
  CHECK(median_lower(pi_uc) < median_lower(pi_dl) - 6.0);
  CHECK(linear_to_db(s[1].median_interferer_power) == doctest::Approx(median_lower(pi_uc)));
  double mean_uc = 0.0, mean_dl = 0.0;
  for (double w : wng_uc) mean_uc += w / wng_uc.size();
  for (double w : wng_dl) mean_dl += w / wng_dl.size();
  CHECK(mean_dl == doctest::Approx(mean_uc).epsilon(0.01));
  CHECK(s[1].mean_wng == doctest::Approx(mean_uc));
}

TEST_CASE("mean DL WNG agrees with explicit weights") {
  const ExperimentConfig c = make_config(20, {kSmi});
  const std::vector<double> deltas{1e-3, 1.0, 30.0, 1e4};
  const std::vector<double> fast = mean_dl_wng(c, deltas);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    double mean = 0.0;
    for (int t = 0; t < 20; ++t) {
      const WeightVector w = mvdr_weights(diagonal_load(scm_of(c, t), DlFactor(deltas[k])),
                                          c.scenario.geometry(), 0.0);
      mean += white_noise_gain(w) / 20.0;
    }
    CHECK(fast[k] == doctest::Approx(mean).epsilon(1e-9));
  }
}

TEST_CASE("matching DL to a target WNG") {
  const ExperimentConfig c = make_config(100, {kSmi});
  for (double target : {3.0, 6.0, 9.0, 10.9}) {
    const DlFactor d = match_dl_to_wng(target, c);
    const std::vector<double> at{d.value()};
    CHECK(mean_dl_wng(c, at)[0] == doctest::Approx(target).epsilon(0.01));
  }
  CHECK_THROWS_AS(match_dl_to_wng(12.0, c), UnreachableTarget);
  CHECK_THROWS_AS(match_dl_to_wng(1e-3, c), UnreachableTarget);
  CHECK_THROWS_AS(match_dl_to_wng(-1.0, c), UnreachableTarget);
}

TEST_CASE("oracle loading maximizes mean SINR") {
  const ExperimentConfig c = make_config(60, {kSmi});
  const std::vector<double> grid = log_dl_grid(-20.0, 40.0, 13);
  const CovarianceMatrix sigma = ensemble_covariance(c.scenario);
  std::vector<double> direct(grid.size(), 0.0);
  for (int t = 0; t < 60; ++t) {
    const CovarianceMatrix s = scm_of(c, t);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const WeightVector w = mvdr_weights(diagonal_load(s, DlFactor(grid[g])),
                                          c.scenario.geometry(), 0.0);
      direct[g] += output_sinr(w, sigma) / 60.0;
    }
  }
  const std::vector<double> fast = mean_dl_sinr(c, grid);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    CHECK(fast[g] == doctest::Approx(direct[g]).epsilon(1e-8));
  }
  const auto best = std::max_element(direct.begin(), direct.end()) - direct.begin();
  CHECK(oracle_optimal_dl(c, grid).value() == grid[best]);

  SUBCASE("ties resolve to the first maximizer") {
    std::vector<double> dup{grid[0], grid[best], grid[best]};
    CHECK(oracle_optimal_dl(c, dup).value() == dup[1]);
  }
  SUBCASE("refining the grid changes the optimum SINR by under 0.1 dB") {
    const auto coarse = mean_dl_sinr(c, default_oracle_grid());
    const auto fine = mean_dl_sinr(c, log_dl_grid(-60.0, 60.0, 241));
    const double a = *std::max_element(coarse.begin(), coarse.end());
    const double b = *std::max_element(fine.begin(), fine.end());
    CHECK(std::abs(linear_to_db(a) - linear_to_db(b)) < 0.1);
  }
}

TEST_CASE("noise-only oracle loading runs to the top of the grid") {
  ExperimentConfig c = make_config(30, {kSmi});
  c.scenario = UlaScenario(UlaGeometry(11), 0.0, {}, 1.0);
  const std::vector<double> grid = log_dl_grid(-20.0, 40.0, 7);
  const std::vector<double> sinr = mean_dl_sinr(c, grid);
  for (std::size_t g = 1; g < sinr.size(); ++g) CHECK(sinr[g] >= sinr[g - 1]);
  CHECK(oracle_optimal_dl(c, grid).value() == grid.back());
  // At heavy loading DL MVDR approaches the conventional beamformer.
  CHECK(sinr.back() == doctest::Approx(11.0).epsilon(1e-3));
}

TEST_CASE("summary statistics") {
  const ExperimentConfig c = make_config(31, {kCbf, kSmi});
  const ExperimentResult r = run_experiment(c);
  const auto s = summarize(c, r);
  REQUIRE(s.size() == 2);
  CHECK(s[0].label == "cbf");
  CHECK(s[1].trials == 31);
  std::vector<double> pi;
  double mean = 0.0;
  for (const TrialRecord& t : r.trials) {
    pi.push_back(t.metrics[1].interferer_power);
    mean += t.metrics[1].interferer_power / 31.0;
  }
  CHECK(s[1].mean_interferer_power == doctest::Approx(mean));
  CHECK(s[1].median_interferer_power == doctest::Approx(median_lower(pi)));
  CHECK(std::isnan(s[1].delta));
}
