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

#ifndef UCMVDR_STATISTICS_HPP
#define UCMVDR_STATISTICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace ucmvdr {

// Empirical CDF as a step function: F(values[k]) = probabilities[k]. Values
// are distinct and ascending; tied samples share one step.
struct EcdfCurve {
  std::vector<double> values;
  std::vector<double> probabilities;
  std::size_t sample_count = 0;

  // Smallest value v with F(v) >= p, p in (0, 1].
  double quantile(double p) const;
  // quantile(0.5): for even n, the lower of the two central order statistics.
  double median() const { return quantile(0.5); }
  // F(x).
  double evaluate(double x) const;
};

// Throws std::invalid_argument on empty input or NaN samples.
EcdfCurve ecdf(std::span<const double> samples);

// Welford accumulator.
class RunningMoments {
 public:
  void add(double x);

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  // Unbiased (n - 1) variance; 0 for fewer than two samples.
  double variance() const;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace ucmvdr

#endif  // UCMVDR_STATISTICS_HPP
