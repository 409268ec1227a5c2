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

#ifndef UCMVDR_EXPERIMENTS_HPP
#define UCMVDR_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucmvdr/array_model.hpp"
#include "ucmvdr/arraypoly.hpp"
#include "ucmvdr/covariance.hpp"
#include "ucmvdr/metrics.hpp"
#include "ucmvdr/statistics.hpp"

namespace ucmvdr {

enum class BeamformerKind { kCbf, kSmi, kUc, kDlMatched, kDlFixed, kDlOracle };

struct BeamformerSpec {
  BeamformerKind kind = BeamformerKind::kSmi;
  // Loading level for kDlFixed, linear.
  double fixed_delta = 0.0;

  static BeamformerSpec fixed(double delta) {
    return {BeamformerKind::kDlFixed, delta};
  }
  // cbf, smi, uc, dl_matched, dl_oracle, dl_fixed_<dB>dB.
  std::string label() const;
  bool is_loaded() const;
};

// Loading levels evenly spaced in dB, inclusive of both ends.
std::vector<double> log_dl_grid(double min_db, double max_db, int points);
// 121 points from -60 dB to +60 dB.
std::vector<double> default_oracle_grid();

struct ExperimentConfig {
  UlaScenario scenario;
  int num_snapshots = 0;
  int num_trials = 3000;
  std::vector<BeamformerSpec> beamformers;
  std::uint64_t base_seed = 0;
  bool capture_zeros = false;
  // Candidate deltas for kDlOracle; empty means default_oracle_grid().
  std::vector<double> oracle_grid;

  // Throws std::invalid_argument. An unloaded SMI (or UC, which starts from
  // it) needs L >= N.
  void validate() const;
};

struct ExecutionOptions {
  int workers = 1;
};

// Abort threshold: a run fails if more than this fraction of trials fail.
inline constexpr double kMaxFailedTrialFraction = 0.01;

struct TrialRecord {
  int trial_index = 0;
  bool failed = false;
  std::string failure_reason;
  // Parallel to ExperimentConfig::beamformers; empty for failed trials.
  std::vector<MetricsRecord> metrics;
  // Array polynomial zeros per beamformer (projected zeros for UC); only
  // filled when capture_zeros is set.
  std::vector<ZeroSet> zeros;
  // UC only: max |B(u)|^2 over the projected zero directions.
  double uc_max_null_depth = std::numeric_limits<double>::quiet_NaN();

  friend bool operator==(const TrialRecord&, const TrialRecord&);
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;
  // Parallel to beamformers: loading used by DL variants, NaN otherwise.
  std::vector<double> resolved_delta;
  std::size_t failed_trials = 0;
  // Ensemble MVDR on the same scenario, for reference lines; empty when the
  // ensemble covariance itself is numerically singular.
  std::optional<MetricsRecord> ensemble;
};

// Monte Carlo engine. Trial t draws its snapshots from
// substream_seed(base_seed, t) and trials run on `workers` OpenMP threads; the
// result does not depend on the worker count. Per-trial solver failures mark
// the trial failed; throws RunAborted if more than 1% fail.
//
// When kDlMatched is configured the UC mean WNG over the successful trials is
// computed first and the loading is matched to it.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const ExecutionOptions& options = {});

// Single-threaded reference of run_experiment; plain loops, no OpenMP.
ExperimentResult run_experiment_serial(const ExperimentConfig& config);

// Largest relative mismatch accepted by match_dl_to_wng.
inline constexpr double kWngMatchTolerance = 0.01;

// Loading whose DL MVDR average WNG over the config's trials is within 1% of
// `target_wng`. Bisection on log10(delta) over [-60, 60] dB; if the average
// WNG is seen to decrease along the way, a 121-point grid scan picks the
// closest level instead. Throws UnreachableTarget when the target lies
// outside the bracket's range by more than the tolerance.
DlFactor match_dl_to_wng(double target_wng, const ExperimentConfig& config,
                         const ExecutionOptions& options = {});

// Mean DL MVDR WNG over the config's trials, evaluated for every delta.
std::vector<double> mean_dl_wng(const ExperimentConfig& config,
                                std::span<const double> deltas,
                                const ExecutionOptions& options = {});

// Grid delta maximizing the trial-averaged output SINR of DL MVDR against the
// ensemble interferer-plus-noise covariance. Ties go to the first grid entry.
DlFactor oracle_optimal_dl(const ExperimentConfig& config,
                           std::span<const double> grid,
                           const ExecutionOptions& options = {});

// Trial-averaged linear SINR per grid delta (the curve oracle_optimal_dl
// maximizes).
std::vector<double> mean_dl_sinr(const ExperimentConfig& config,
                                 std::span<const double> grid,
                                 const ExecutionOptions& options = {});

struct BeamformerSummary {
  std::string label;
  std::size_t trials = 0;
  double delta = std::numeric_limits<double>::quiet_NaN();
  double mean_interferer_power = 0.0;
  double var_interferer_power = 0.0;
  double median_interferer_power = 0.0;
  double mean_noise_power = 0.0;
  double mean_wng = 0.0;
  double var_wng = 0.0;
  double median_wng = 0.0;
  // ECDF of P_I in dB.
  EcdfCurve interferer_power_db;
  EcdfCurve wng;
};

// Per-beamformer statistics over the successful trials.
std::vector<BeamformerSummary> summarize(const ExperimentConfig& config,
                                         const ExperimentResult& result);

}  // namespace ucmvdr

#endif  // UCMVDR_EXPERIMENTS_HPP
