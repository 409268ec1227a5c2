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


// Times the serial reference pipeline against the OpenMP one on the same
// Monte Carlo config and checks that both produce identical trial records.
//
//   bench_montecarlo [trials] [workers]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "ucmvdr/experiments.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ucmvdr;
  const int trials = argc > 1 ? std::atoi(argv[1]) : 3000;
  const int workers = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();

  const UlaScenario scenario(UlaGeometry(11), 0.0,
                             {SourceSpec(3.0 / 11.0, db_to_linear(40.0))}, 1.0);
  const ExperimentConfig config{scenario,
                                12,
                                trials,
                                {{BeamformerKind::kCbf, 0.0},
                                 {BeamformerKind::kSmi, 0.0},
                                 {BeamformerKind::kUc, 0.0},
                                 {BeamformerKind::kDlMatched, 0.0}},
                                20260101,
                                false,
                                {}};

  auto start = std::chrono::steady_clock::now();
  const ExperimentResult serial = run_experiment_serial(config);
  const double t_serial = seconds_since(start);

  start = std::chrono::steady_clock::now();
  const ExperimentResult parallel = run_experiment(config, {workers});
  const double t_parallel = seconds_since(start);

  const bool identical = serial.trials == parallel.trials &&
                         serial.resolved_delta[3] == parallel.resolved_delta[3];
  std::printf("trials=%d workers=%d\n", trials, workers);
  std::printf("serial    %8.3f s\n", t_serial);
  std::printf("openmp    %8.3f s  speedup %.2fx\n", t_parallel, t_serial / t_parallel);
  std::printf("identical %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
