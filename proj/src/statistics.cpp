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

#include "ucmvdr/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ucmvdr {

EcdfCurve ecdf(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("ecdf of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  if (std::any_of(sorted.begin(), sorted.end(),
                  [](double x) { return std::isnan(x); })) {
    throw std::invalid_argument("ecdf: NaN sample");
  }
  std::sort(sorted.begin(), sorted.end());

  EcdfCurve curve;
  curve.sample_count = sorted.size();
  const double n = static_cast<double>(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k + 1 < sorted.size() && sorted[k + 1] == sorted[k]) continue;
    curve.values.push_back(sorted[k]);
    curve.probabilities.push_back(static_cast<double>(k + 1) / n);
  }
  return curve;
}

double EcdfCurve::quantile(double p) const {
  if (values.empty()) throw std::logic_error("quantile of an empty ECDF");
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("quantile probability must be in (0, 1]");
  }
  // Order statistic of rank ceil(p n), 1-based; for p = 0.5 and even n this
  // is the lower of the two central samples.
  const double n = static_cast<double>(sample_count);
  auto rank = static_cast<std::size_t>(std::ceil(p * n - 1e-9 * n));
  rank = std::clamp<std::size_t>(rank, 1, sample_count);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (probabilities[k] * n + 0.5 >= static_cast<double>(rank)) {
      return values[k];
    }
  }
  return values.back();
}

double EcdfCurve::evaluate(double x) const {
  auto it = std::upper_bound(values.begin(), values.end(), x);
  if (it == values.begin()) return 0.0;
  return probabilities[static_cast<std::size_t>(it - values.begin()) - 1];
}

void RunningMoments::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

double RunningMoments::variance() const {
  if (count_ < 2) return 0.0;
  return m2_ / static_cast<double>(count_ - 1);
}

}  // namespace ucmvdr
