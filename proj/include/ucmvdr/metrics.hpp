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

#ifndef UCMVDR_METRICS_HPP
#define UCMVDR_METRICS_HPP

#include <vector>

#include "ucmvdr/array_model.hpp"
#include "ucmvdr/beamformers.hpp"

namespace ucmvdr {

// All powers in linear units.
struct MetricsRecord {
  double wng = 0.0;
  std::vector<double> notch_depth_per_interferer;
  std::vector<double> interferer_power_per_interferer;
  double interferer_power = 0.0;  // P_I
  double noise_power = 0.0;       // P_N
  double total_output = 0.0;      // P_I + P_N

  // Largest notch depth over the interferers; 0 without interferers.
  double worst_notch_depth() const;

  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

// 1 / ||w||^2.
double white_noise_gain(const WeightVector& w);

// |w^H v(u)|^2.
double notch_depth(const WeightVector& w, double u);

// P_I = sum_i sigma_i^2 |w^H v_i|^2, P_N = sigma_w^2 ||w||^2.
MetricsRecord output_powers(const WeightVector& w, const UlaScenario& scenario);

// Re(w^H A w).
double quadratic_form(const ComplexVector& w, const ComplexMatrix& a);

// |w^H v0|^2 / (w^H Sigma w), Sigma the interferer-plus-noise covariance.
double output_sinr(const WeightVector& w, const CovarianceMatrix& cov);

}  // namespace ucmvdr

#endif  // UCMVDR_METRICS_HPP
