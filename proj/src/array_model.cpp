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

#include "ucmvdr/array_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ucmvdr/rng.hpp"

namespace ucmvdr {

namespace {

void check_direction(double u, const char* what) {
  if (!(std::abs(u) <= 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                " direction cosine must lie in [-1, 1], got " +
                                std::to_string(u));
  }
}

}  // namespace

UlaGeometry::UlaGeometry(int num_sensors, double spacing_over_wavelength)
    : num_sensors_(num_sensors), spacing_(spacing_over_wavelength) {
  if (num_sensors_ < 2) {
    throw std::invalid_argument("ULA needs at least 2 sensors");
  }
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) {
    throw std::invalid_argument("sensor spacing must be positive");
  }
}

SourceSpec::SourceSpec(double u, double power_linear)
    : direction_cosine(u), power(power_linear) {
  check_direction(u, "source");
  if (!(power > 0.0) || !std::isfinite(power)) {
    throw std::invalid_argument("source power must be positive and finite");
  }
}

UlaScenario::UlaScenario(UlaGeometry geometry, double look_direction,
                         std::vector<SourceSpec> interferers,
                         double noise_power)
    : geometry_(geometry),
      look_direction_(look_direction),
      interferers_(std::move(interferers)),
      noise_power_(noise_power) {
  check_direction(look_direction_, "look");
  if (!(noise_power_ > 0.0) || !std::isfinite(noise_power_)) {
    throw std::invalid_argument("noise power must be positive and finite");
  }
  for (std::size_t i = 0; i < interferers_.size(); ++i) {
    // SourceSpec fields are public, so check them again here.
    const SourceSpec& s = interferers_[i];
    check_direction(s.direction_cosine, "interferer");
    if (!(s.power > 0.0) || !std::isfinite(s.power)) {
      throw std::invalid_argument("interferer power must be positive");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (interferers_[k].direction_cosine == s.direction_cosine) {
        throw std::invalid_argument("interferer directions must be distinct");
      }
    }
  }
}

UlaScenario UlaScenario::with_interferer_power(double power) const {
  std::vector<SourceSpec> sources = interferers_;
  for (SourceSpec& s : sources) s.power = power;
  return UlaScenario(geometry_, look_direction_, std::move(sources),
                     noise_power_);
}

ComplexVector steering_vector(const UlaGeometry& geometry, double u) {
  check_direction(u, "steering");
  const int n_sensors = geometry.num_sensors();
  const double phase_step =
      -2.0 * kPi * geometry.spacing_over_wavelength() * u;
  ComplexVector v(n_sensors);
  for (int n = 0; n < n_sensors; ++n) {
    // Evaluated per entry, not by recurrence.
    v(n) = std::polar(1.0, phase_step * n);
  }
  return v;
}

CovarianceMatrix ensemble_covariance(const UlaScenario& scenario) {
  const int n_sensors = scenario.num_sensors();
  ComplexMatrix sigma =
      ComplexMatrix::Identity(n_sensors, n_sensors) * scenario.noise_power();
  for (const SourceSpec& s : scenario.interferers()) {
    const ComplexVector v = steering_vector(scenario.geometry(),
                                            s.direction_cosine);
    sigma.noalias() += s.power * (v * v.adjoint());
  }
  // Diagonal of v v^H is exactly 1; make the matrix exactly Hermitian too.
  sigma = (0.5 * (sigma + sigma.adjoint())).eval();
  return CovarianceMatrix(std::move(sigma), CovarianceKind::kEnsemble);
}

SnapshotBatch generate_snapshots(const UlaScenario& scenario,
                                 int num_snapshots, std::uint64_t seed) {
  if (num_snapshots < 1) {
    throw std::invalid_argument("need at least one snapshot");
  }
  const int n_sensors = scenario.num_sensors();
  const auto& sources = scenario.interferers();

  std::vector<ComplexVector> manifolds;
  manifolds.reserve(sources.size());
  for (const SourceSpec& s : sources) {
    manifolds.push_back(steering_vector(scenario.geometry(), s.direction_cosine));
  }

  ComplexGaussianSource gaussian(seed);
  SnapshotBatch batch{ComplexMatrix(n_sensors, num_snapshots), seed};
  for (int l = 0; l < num_snapshots; ++l) {
    auto column = batch.data.col(l);
    column.setZero();
    for (std::size_t i = 0; i < sources.size(); ++i) {
      column += gaussian.draw(sources[i].power) * manifolds[i];
    }
    for (int n = 0; n < n_sensors; ++n) {
      column(n) += gaussian.draw(scenario.noise_power());
    }
  }
  return batch;
}

}  // namespace ucmvdr
