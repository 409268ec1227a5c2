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

#include "ucmvdr/uc_rectify.hpp"

#include <cmath>
#include <stdexcept>

namespace ucmvdr {

double angle_to_direction(double angle) { return wrap_angle(angle) / kPi; }

ProjectionReport project_zeros(const ZeroSet& zeros, double look_direction,
                               int num_sensors) {
  if (zeros.zeros.empty()) {
    throw std::invalid_argument("project_zeros: empty zero set");
  }
  if (num_sensors < 2) {
    throw std::invalid_argument("project_zeros: need N >= 2");
  }
  const double look_angle = kPi * look_direction;
  const double first_null = 2.0 * kPi / num_sensors;

  ProjectionReport report;
  report.original_zeros = zeros;
  report.projected_zeros.zeros.reserve(zeros.zeros.size());
  int moved_up = 0;
  int moved_down = 0;
  for (std::size_t i = 0; i < zeros.zeros.size(); ++i) {
    const double angle = std::arg(zeros.zeros[i]);
    const double offset = wrap_angle(angle - look_angle);
    if (std::abs(offset) > first_null) {
      report.projected_zeros.zeros.push_back(std::polar(1.0, angle));
      continue;
    }
    // Inside the main lobe: move to the nearer first null; sgn(0) = +1.
    const double side = offset >= 0.0 ? 1.0 : -1.0;
    (side > 0.0 ? moved_up : moved_down)++;
    report.projected_zeros.zeros.push_back(
        std::polar(1.0, wrap_angle(look_angle + side * first_null)));
    report.mainlobe_moved.push_back(i);
  }
  report.collapsed_to_multiple_root = moved_up > 1 || moved_down > 1;
  return report;
}

UcResult uc_mvdr_weights(const WeightVector& smi_weights) {
  const ZeroSet sample_zeros = find_zeros(weights_to_polynomial(smi_weights));
  ProjectionReport report =
      project_zeros(sample_zeros, smi_weights.look_direction(),
                    smi_weights.size());
  WeightVector weights = synthesize_from_zeros(
      report.projected_zeros, smi_weights.geometry(),
      smi_weights.look_direction());
  report.projected_zeros.gain = std::conj(weights.weights()(0));
  return UcResult{std::move(weights), std::move(report)};
}

}  // namespace ucmvdr
