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

#ifndef UCMVDR_ARRAY_MODEL_HPP
#define UCMVDR_ARRAY_MODEL_HPP

#include <cstdint>
#include <vector>

#include "ucmvdr/covariance.hpp"
#include "ucmvdr/types.hpp"

namespace ucmvdr {

// Uniform linear array: N sensors spaced d apart, d given in wavelengths.
class UlaGeometry {
 public:
  explicit UlaGeometry(int num_sensors, double spacing_over_wavelength = 0.5);

  int num_sensors() const { return num_sensors_; }
  double spacing_over_wavelength() const { return spacing_; }
  bool is_half_wavelength() const { return spacing_ == 0.5; }

  friend bool operator==(const UlaGeometry&, const UlaGeometry&) = default;

 private:
  int num_sensors_;
  double spacing_;
};

// A narrowband planewave source at direction cosine u with linear power
// relative to the sensor noise floor.
struct SourceSpec {
  double direction_cosine = 0.0;
  double power = 1.0;

  SourceSpec() = default;
  SourceSpec(double u, double power_linear);
};

class UlaScenario {
 public:
  UlaScenario(UlaGeometry geometry, double look_direction,
              std::vector<SourceSpec> interferers, double noise_power = 1.0);

  const UlaGeometry& geometry() const { return geometry_; }
  int num_sensors() const { return geometry_.num_sensors(); }
  double look_direction() const { return look_direction_; }
  const std::vector<SourceSpec>& interferers() const { return interferers_; }
  double noise_power() const { return noise_power_; }

  // Copy with every interferer power replaced by `power`.
  UlaScenario with_interferer_power(double power) const;

 private:
  UlaGeometry geometry_;
  double look_direction_;
  std::vector<SourceSpec> interferers_;
  double noise_power_;
};

// N x L snapshot matrix, one column per snapshot.
struct SnapshotBatch {
  ComplexMatrix data;
  std::uint64_t seed = 0;

  int num_sensors() const { return static_cast<int>(data.rows()); }
  int num_snapshots() const { return static_cast<int>(data.cols()); }
};

// Array manifold vector: entry n is exp(-j 2 pi (d/lambda) u n).
ComplexVector steering_vector(const UlaGeometry& geometry, double u);

// Sum_i sigma_i^2 v_i v_i^H + sigma_w^2 I.
CovarianceMatrix ensemble_covariance(const UlaScenario& scenario);

// Draws L signal-free snapshots. The desired source is never injected.
//
// Per snapshot the generator consumes, in order, one complex amplitude per
// interferer and then one complex noise sample per sensor; each complex draw
// takes the real part first. Identical (scenario, L, seed) gives bit-identical
// output.
SnapshotBatch generate_snapshots(const UlaScenario& scenario,
                                 int num_snapshots, std::uint64_t seed);

}  // namespace ucmvdr

#endif  // UCMVDR_ARRAY_MODEL_HPP
