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

#include "ucmvdr/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace ucmvdr {

double MetricsRecord::worst_notch_depth() const {
  double worst = 0.0;
  for (double nd : notch_depth_per_interferer) worst = std::max(worst, nd);
  return worst;
}

double white_noise_gain(const WeightVector& w) {
  const double norm_sq = w.weights().squaredNorm();
  if (!(norm_sq > 0.0)) {
    throw std::invalid_argument("white noise gain of a zero weight vector");
  }
  return 1.0 / norm_sq;
}

double notch_depth(const WeightVector& w, double u) {
  return std::norm(w.response(u));
}

MetricsRecord output_powers(const WeightVector& w,
                            const UlaScenario& scenario) {
  if (w.size() != scenario.num_sensors()) {
    throw std::invalid_argument("output_powers: weight length mismatch");
  }
  MetricsRecord record;
  record.wng = white_noise_gain(w);
  for (const SourceSpec& s : scenario.interferers()) {
    const double nd = notch_depth(w, s.direction_cosine);
    record.notch_depth_per_interferer.push_back(nd);
    record.interferer_power_per_interferer.push_back(s.power * nd);
    record.interferer_power += s.power * nd;
  }
  record.noise_power = scenario.noise_power() * w.weights().squaredNorm();
  record.total_output = record.interferer_power + record.noise_power;
  return record;
}

double quadratic_form(const ComplexVector& w, const ComplexMatrix& a) {
  return w.dot(a * w).real();
}

double output_sinr(const WeightVector& w, const CovarianceMatrix& cov) {
  const double gain = std::norm(w.response(w.look_direction()));
  return gain / quadratic_form(w.weights(), cov.entries());
}

}  // namespace ucmvdr
