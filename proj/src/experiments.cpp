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

#include "ucmvdr/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ucmvdr/beamformers.hpp"
#include "ucmvdr/rng.hpp"
#include "ucmvdr/uc_rectify.hpp"

namespace ucmvdr {

std::string BeamformerSpec::label() const {
  switch (kind) {
    case BeamformerKind::kCbf:
      return "cbf";
    case BeamformerKind::kSmi:
      return "smi";
    case BeamformerKind::kUc:
      return "uc";
    case BeamformerKind::kDlMatched:
      return "dl_matched";
    case BeamformerKind::kDlOracle:
      return "dl_oracle";
    case BeamformerKind::kDlFixed: {
      std::ostringstream s;
      s << "dl_fixed_" << linear_to_db(fixed_delta) << "dB";
      return s.str();
    }
  }
  return "unknown";
}

bool BeamformerSpec::is_loaded() const {
  return kind == BeamformerKind::kDlMatched ||
         kind == BeamformerKind::kDlFixed || kind == BeamformerKind::kDlOracle;
}

std::vector<double> log_dl_grid(double min_db, double max_db, int points) {
  if (points < 1 || !(max_db >= min_db)) {
    throw std::invalid_argument("log_dl_grid: bad range");
  }
  std::vector<double> grid(points);
  for (int k = 0; k < points; ++k) {
    const double db =
        points == 1 ? min_db : min_db + (max_db - min_db) * k / (points - 1);
    grid[k] = db_to_linear(db);
  }
  return grid;
}

std::vector<double> default_oracle_grid() {
  return log_dl_grid(-60.0, 60.0, 121);
}

void ExperimentConfig::validate() const {
  if (num_snapshots < 1) throw std::invalid_argument("num_snapshots must be >= 1");
  if (num_trials < 1) throw std::invalid_argument("num_trials must be >= 1");
  if (beamformers.empty()) {
    throw std::invalid_argument("at least one beamformer must be configured");
  }
  const int n = scenario.num_sensors();
  for (std::size_t i = 0; i < beamformers.size(); ++i) {
    const BeamformerSpec& b = beamformers[i];
    const bool unloaded_inverse = b.kind == BeamformerKind::kSmi ||
                                  b.kind == BeamformerKind::kUc ||
                                  b.kind == BeamformerKind::kDlMatched;
    if (unloaded_inverse && num_snapshots < n) {
      throw std::invalid_argument(b.label() + " needs num_snapshots >= N (" +
                                  std::to_string(n) + ")");
    }
    if ((b.kind == BeamformerKind::kUc ||
         b.kind == BeamformerKind::kDlMatched || capture_zeros) &&
        !scenario.geometry().is_half_wavelength()) {
      throw std::invalid_argument(
          "array polynomial processing needs d/lambda = 1/2");
    }
    if (b.kind == BeamformerKind::kDlFixed) {
      DlFactor checked(b.fixed_delta);
      (void)checked;
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (beamformers[k].label() == b.label()) {
        throw std::invalid_argument("beamformer listed twice: " + b.label());
      }
    }
  }
  for (double d : oracle_grid) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("oracle grid entries must be positive");
    }
  }
}

bool operator==(const TrialRecord& a, const TrialRecord& b) {
  const bool null_depth_equal =
      (std::isnan(a.uc_max_null_depth) && std::isnan(b.uc_max_null_depth)) ||
      a.uc_max_null_depth == b.uc_max_null_depth;
  return a.trial_index == b.trial_index && a.failed == b.failed &&
         a.failure_reason == b.failure_reason && a.metrics == b.metrics &&
         a.zeros == b.zeros && null_depth_equal;
}

namespace {

// Runs fn(t) for t in [0, n): OpenMP work-sharing, or a plain loop for the
// serial reference. fn must not throw.
class TrialLoop {
 public:
  static TrialLoop parallel(int workers) { return TrialLoop(std::max(1, workers), false); }
  static TrialLoop serial() { return TrialLoop(1, true); }

  template <typename Fn>
  void run(int n, Fn&& fn) const {
    if (serial_) {
      for (int t = 0; t < n; ++t) fn(t);
      return;
    }
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers_)
    for (int t = 0; t < n; ++t) fn(t);
  }

 private:
  TrialLoop(int workers, bool serial) : workers_(workers), serial_(serial) {}
  int workers_;
  bool serial_;
};

CovarianceMatrix trial_scm(const ExperimentConfig& config, int trial) {
  return sample_covariance(generate_snapshots(
      config.scenario, config.num_snapshots,
      substream_seed(config.base_seed, static_cast<std::uint64_t>(trial))));
}

struct TrialOutput {
  TrialRecord record;
  double uc_wng = std::numeric_limits<double>::quiet_NaN();
};

double max_null_depth(const UcResult& uc) {
  double worst = 0.0;
  for (const Complex& z : uc.report.projected_zeros.zeros) {
    worst = std::max(worst, notch_depth(uc.weights,
                                        angle_to_direction(std::arg(z))));
  }
  return worst;
}

// Evaluates the beamformers selected by `mask` on one trial. deltas[k] is the
// loading of beamformer k (loaded kinds only).
TrialOutput evaluate_trial(const ExperimentConfig& config,
                           std::span<const double> deltas,
                           const std::vector<bool>& mask, bool want_uc_wng,
                           int trial) {
  TrialOutput out;
  TrialRecord& rec = out.record;
  rec.trial_index = trial;
  const std::size_t count = config.beamformers.size();
  try {
    const UlaScenario& scenario = config.scenario;
    const UlaGeometry& geometry = scenario.geometry();
    const double u0 = scenario.look_direction();
    const CovarianceMatrix scm = trial_scm(config, trial);

    std::optional<WeightVector> smi;
    std::optional<UcResult> uc;
    auto smi_weights = [&]() -> const WeightVector& {
      if (!smi) smi = mvdr_weights(scm, geometry, u0);
      return *smi;
    };
    auto uc_result = [&]() -> const UcResult& {
      if (!uc) uc = uc_mvdr_weights(smi_weights());
      return *uc;
    };

    rec.metrics.resize(count);
    if (config.capture_zeros) rec.zeros.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (!mask[k]) continue;
      const BeamformerSpec& spec = config.beamformers[k];
      std::optional<WeightVector> w;
      switch (spec.kind) {
        case BeamformerKind::kCbf:
          w = cbf_weights(geometry, u0);
          break;
        case BeamformerKind::kSmi:
          w = smi_weights();
          break;
        case BeamformerKind::kUc:
          w = uc_result().weights;
          rec.uc_max_null_depth = max_null_depth(uc_result());
          break;
        case BeamformerKind::kDlMatched:
        case BeamformerKind::kDlFixed:
        case BeamformerKind::kDlOracle:
          w = mvdr_weights(diagonal_load(scm, DlFactor(deltas[k])), geometry,
                           u0);
          break;
      }
      rec.metrics[k] = output_powers(*w, scenario);
      if (config.capture_zeros) {
        rec.zeros[k] = spec.kind == BeamformerKind::kUc
                           ? uc_result().report.projected_zeros
                           : find_zeros(weights_to_polynomial(*w));
      }
    }
    if (want_uc_wng) out.uc_wng = white_noise_gain(uc_result().weights);
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.failure_reason = e.what();
    rec.metrics.clear();
    rec.zeros.clear();
    rec.uc_max_null_depth = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

// Per-trial spectral summary of the sample covariance for the DL searches:
// eigenvalues and |U^H v0|^2.
struct TrialSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd look_power;
};

std::vector<TrialSpectrum> trial_spectra(const ExperimentConfig& config,
                                         const std::vector<int>& trials,
                                         const TrialLoop& loop) {
  const ComplexVector v0 = steering_vector(config.scenario.geometry(),
                                           config.scenario.look_direction());
  std::vector<TrialSpectrum> spectra(trials.size());
  loop.run(static_cast<int>(trials.size()), [&](int i) {
    const LoadingSweep sweep(trial_scm(config, trials[i]));
    spectra[i].eigenvalues = sweep.eigenvalues();
    spectra[i].look_power = sweep.project(v0).cwiseAbs2();
  });
  return spectra;
}

// WNG of DL MVDR from the spectral form: with a_k = |u_k^H v0|^2 and
// g_k = 1 / (lambda_k + delta), w is proportional to sum_k g_k u_k u_k^H v0,
// so WNG = (sum a_k g_k)^2 / sum a_k g_k^2.
double spectral_wng(const TrialSpectrum& s, double delta) {
  const Eigen::ArrayXd g = (s.eigenvalues.array() + delta).inverse();
  const double num = (s.look_power.array() * g).sum();
  const double den = (s.look_power.array() * g.square()).sum();
  return num * num / den;
}

double mean_spectral_wng(const std::vector<TrialSpectrum>& spectra,
                         double delta) {
  RunningMoments m;
  for (const TrialSpectrum& s : spectra) m.add(spectral_wng(s, delta));
  return m.mean();
}

std::vector<int> all_trials(const ExperimentConfig& config) {
  std::vector<int> trials(config.num_trials);
  for (int t = 0; t < config.num_trials; ++t) trials[t] = t;
  return trials;
}

double match_impl(double target, const ExperimentConfig& config,
                  const std::vector<int>& trials, const TrialLoop& loop) {
  const int n = config.scenario.num_sensors();
  if (!(target > 0.0) || !(target <= n * (1.0 + kWngMatchTolerance))) {
    throw UnreachableTarget("target WNG must lie in (0, N]");
  }
  const std::vector<TrialSpectrum> spectra = trial_spectra(config, trials, loop);
  auto average = [&](double log_delta) {
    return mean_spectral_wng(spectra, std::pow(10.0, log_delta));
  };
  auto close = [&](double value) {
    return std::abs(value - target) <= kWngMatchTolerance * target;
  };

  constexpr double kLo = -6.0;  // -60 dB
  constexpr double kHi = 6.0;   // +60 dB
  double x_lo = kLo, x_hi = kHi;
  double f_lo = average(x_lo), f_hi = average(x_hi);
  if (close(f_lo) && target <= f_lo) return std::pow(10.0, x_lo);
  if (close(f_hi) && target >= f_hi) return std::pow(10.0, x_hi);

  bool monotone = f_lo <= f_hi;
  if (monotone && (target < f_lo || target > f_hi)) {
    std::ostringstream msg;
    msg << "target WNG " << target << " outside [" << f_lo << ", " << f_hi
        << "] reachable with loading in [-60, 60] dB";
    throw UnreachableTarget(msg.str());
  }
  while (monotone) {
    const double x_mid = 0.5 * (x_lo + x_hi);
    const double f_mid = average(x_mid);
    if (f_mid < f_lo || f_mid > f_hi) {
      monotone = false;
      break;
    }
    if (std::abs(f_mid - target) <= 1e-4 * target || x_hi - x_lo < 1e-10) {
      return std::pow(10.0, x_mid);
    }
    if (f_mid < target) {
      x_lo = x_mid;
      f_lo = f_mid;
    } else {
      x_hi = x_mid;
      f_hi = f_mid;
    }
  }

  // Average WNG not monotone in delta: closest point of a 121-point scan.
  const std::vector<double> grid = log_dl_grid(-60.0, 60.0, 121);
  double best = grid.front();
  double best_error = std::numeric_limits<double>::infinity();
  for (double delta : grid) {
    const double error = std::abs(mean_spectral_wng(spectra, delta) - target);
    if (error < best_error) {
      best_error = error;
      best = delta;
    }
  }
  if (!(best_error <= kWngMatchTolerance * target)) {
    throw UnreachableTarget("no grid loading matches the target WNG within 1%");
  }
  return best;
}

std::vector<double> sinr_impl(const ExperimentConfig& config,
                              std::span<const double> grid,
                              const TrialLoop& loop) {
  if (grid.empty()) throw std::invalid_argument("empty loading grid");
  const UlaScenario& scenario = config.scenario;
  const ComplexVector v0 =
      steering_vector(scenario.geometry(), scenario.look_direction());
  const ComplexMatrix sigma = ensemble_covariance(scenario).entries();
  const int trials = config.num_trials;

  // table[t * grid + g]: SINR of trial t at loading grid[g].
  std::vector<double> table(static_cast<std::size_t>(trials) * grid.size());
  loop.run(trials, [&](int t) {
    const LoadingSweep sweep(trial_scm(config, t));
    const ComplexVector beta = sweep.project(v0);
    const ComplexMatrix m =
        sweep.eigenvectors().adjoint() * sigma * sweep.eigenvectors();
    for (std::size_t g = 0; g < grid.size(); ++g) {
      // Unnormalized weights in the eigenbasis; SINR is scale invariant.
      ComplexVector x = beta;
      x.array() /= (sweep.eigenvalues().array() + grid[g]).cast<Complex>();
      const double gain = std::norm(beta.dot(x));
      table[static_cast<std::size_t>(t) * grid.size() + g] =
          gain / x.dot(m * x).real();
    }
  });

  std::vector<double> mean(grid.size(), 0.0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    RunningMoments m;
    for (int t = 0; t < trials; ++t) {
      m.add(table[static_cast<std::size_t>(t) * grid.size() + g]);
    }
    mean[g] = m.mean();
  }
  return mean;
}

double oracle_impl(const ExperimentConfig& config, std::span<const double> grid,
                   const TrialLoop& loop) {
  const std::vector<double> sinr = sinr_impl(config, grid, loop);
  std::size_t best = 0;
  for (std::size_t g = 1; g < sinr.size(); ++g) {
    if (sinr[g] > sinr[best]) best = g;
  }
  return grid[best];
}

ExperimentResult run_pipeline(const ExperimentConfig& config,
                              const TrialLoop& loop) {
  config.validate();
  const std::size_t count = config.beamformers.size();
  const int trials = config.num_trials;

  ExperimentResult result;
  result.resolved_delta.assign(count, std::numeric_limits<double>::quiet_NaN());
  bool has_matched = false;
  std::vector<bool> main_mask(count, true);
  std::vector<bool> matched_mask(count, false);
  for (std::size_t k = 0; k < count; ++k) {
    const BeamformerSpec& spec = config.beamformers[k];
    if (spec.kind == BeamformerKind::kDlFixed) {
      result.resolved_delta[k] = spec.fixed_delta;
    } else if (spec.kind == BeamformerKind::kDlOracle) {
      const std::vector<double> grid =
          config.oracle_grid.empty() ? default_oracle_grid() : config.oracle_grid;
      result.resolved_delta[k] = oracle_impl(config, grid, loop);
    } else if (spec.kind == BeamformerKind::kDlMatched) {
      has_matched = true;
      main_mask[k] = false;
      matched_mask[k] = true;
    }
  }

  std::vector<TrialOutput> outputs(trials);
  loop.run(trials, [&](int t) {
    outputs[t] = evaluate_trial(config, result.resolved_delta, main_mask,
                                has_matched, t);
  });

  auto count_failed = [&] {
    std::size_t failed = 0;
    for (const TrialOutput& o : outputs) failed += o.record.failed ? 1 : 0;
    return failed;
  };
  auto check_abort = [&](std::size_t failed) {
    if (static_cast<double>(failed) >
        kMaxFailedTrialFraction * static_cast<double>(trials)) {
      std::ostringstream msg;
      msg << failed << " of " << trials << " trials failed";
      for (const TrialOutput& o : outputs) {
        if (o.record.failed) {
          msg << " (first: trial " << o.record.trial_index << ": "
              << o.record.failure_reason << ")";
          break;
        }
      }
      throw RunAborted(msg.str());
    }
  };
  check_abort(count_failed());

  if (has_matched) {
    std::vector<int> ok;
    RunningMoments uc_wng;
    for (const TrialOutput& o : outputs) {
      if (o.record.failed) continue;
      ok.push_back(o.record.trial_index);
      uc_wng.add(o.uc_wng);
    }
    const double delta = match_impl(uc_wng.mean(), config, ok, loop);
    for (std::size_t k = 0; k < count; ++k) {
      if (matched_mask[k]) result.resolved_delta[k] = delta;
    }
    loop.run(static_cast<int>(ok.size()), [&](int i) {
      TrialRecord& rec = outputs[ok[i]].record;
      TrialOutput extra = evaluate_trial(config, result.resolved_delta,
                                         matched_mask, false, ok[i]);
      if (extra.record.failed) {
        rec = std::move(extra.record);
        return;
      }
      for (std::size_t k = 0; k < count; ++k) {
        if (!matched_mask[k]) continue;
        rec.metrics[k] = std::move(extra.record.metrics[k]);
        if (config.capture_zeros) rec.zeros[k] = std::move(extra.record.zeros[k]);
      }
    });
    check_abort(count_failed());
  }

  result.failed_trials = count_failed();
  result.trials.reserve(trials);
  for (TrialOutput& o : outputs) result.trials.push_back(std::move(o.record));

  const UlaScenario& scenario = config.scenario;
  try {
    result.ensemble = output_powers(
        mvdr_weights(ensemble_covariance(scenario), scenario.geometry(),
                     scenario.look_direction()),
        scenario);
  } catch (const IllConditioned&) {
    result.ensemble.reset();
  }
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const ExecutionOptions& options) {
  return run_pipeline(config, TrialLoop::parallel(options.workers));
}

ExperimentResult run_experiment_serial(const ExperimentConfig& config) {
  return run_pipeline(config, TrialLoop::serial());
}

DlFactor match_dl_to_wng(double target_wng, const ExperimentConfig& config,
                         const ExecutionOptions& options) {
  config.validate();
  return DlFactor(match_impl(target_wng, config, all_trials(config),
                             TrialLoop::parallel(options.workers)));
}

std::vector<double> mean_dl_wng(const ExperimentConfig& config,
                                std::span<const double> deltas,
                                const ExecutionOptions& options) {
  config.validate();
  const std::vector<TrialSpectrum> spectra = trial_spectra(
      config, all_trials(config), TrialLoop::parallel(options.workers));
  std::vector<double> out;
  out.reserve(deltas.size());
  for (double d : deltas) out.push_back(mean_spectral_wng(spectra, DlFactor(d).value()));
  return out;
}

DlFactor oracle_optimal_dl(const ExperimentConfig& config,
                           std::span<const double> grid,
                           const ExecutionOptions& options) {
  config.validate();
  return DlFactor(oracle_impl(config, grid, TrialLoop::parallel(options.workers)));
}

std::vector<double> mean_dl_sinr(const ExperimentConfig& config,
                                 std::span<const double> grid,
                                 const ExecutionOptions& options) {
  config.validate();
  return sinr_impl(config, grid, TrialLoop::parallel(options.workers));
}

std::vector<BeamformerSummary> summarize(const ExperimentConfig& config,
                                         const ExperimentResult& result) {
  std::vector<BeamformerSummary> out;
  for (std::size_t k = 0; k < config.beamformers.size(); ++k) {
    BeamformerSummary s;
    s.label = config.beamformers[k].label();
    if (k < result.resolved_delta.size()) s.delta = result.resolved_delta[k];
    RunningMoments pi, pn, wng;
    std::vector<double> pi_db, wng_values;
    for (const TrialRecord& rec : result.trials) {
      if (rec.failed) continue;
      const MetricsRecord& m = rec.metrics[k];
      pi.add(m.interferer_power);
      pn.add(m.noise_power);
      wng.add(m.wng);
      pi_db.push_back(linear_to_db(m.interferer_power));
      wng_values.push_back(m.wng);
    }
    s.trials = pi.count();
    if (s.trials == 0) {
      out.push_back(std::move(s));
      continue;
    }
    s.mean_interferer_power = pi.mean();
    s.var_interferer_power = pi.variance();
    s.mean_noise_power = pn.mean();
    s.mean_wng = wng.mean();
    s.var_wng = wng.variance();
    s.interferer_power_db = ecdf(pi_db);
    s.wng = ecdf(wng_values);
    s.median_interferer_power = db_to_linear(s.interferer_power_db.median());
    s.median_wng = s.wng.median();
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ucmvdr
