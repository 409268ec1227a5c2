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

#include "ucmvdr/beamformers.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ucmvdr {

WeightVector::WeightVector(ComplexVector weights, UlaGeometry geometry,
                           double look_direction)
    : weights_(std::move(weights)),
      geometry_(geometry),
      look_direction_(look_direction) {
  if (weights_.size() != geometry_.num_sensors()) {
    throw std::invalid_argument("weight vector length does not match array");
  }
  if (!weights_.allFinite()) {
    throw std::invalid_argument("weight vector has non-finite entries");
  }
  const double error = std::abs(response(look_direction_) - 1.0);
  if (!(error < kDistortionlessTolerance)) {
    std::ostringstream msg;
    msg << "weights violate the distortionless constraint at u0="
        << look_direction_ << " (|w^H v0 - 1| = " << error << ")";
    throw std::invalid_argument(msg.str());
  }
}

Complex WeightVector::response(double u) const {
  return weights_.dot(steering_vector(geometry_, u));
}

WeightVector cbf_weights(const UlaGeometry& geometry, double look_direction) {
  ComplexVector w = steering_vector(geometry, look_direction);
  w /= static_cast<double>(geometry.num_sensors());
  return WeightVector(std::move(w), geometry, look_direction);
}

WeightVector mvdr_weights(const CovarianceMatrix& cov,
                          const UlaGeometry& geometry, double look_direction) {
  if (cov.size() != geometry.num_sensors()) {
    throw std::invalid_argument("covariance size does not match array");
  }
  const ComplexVector v0 = steering_vector(geometry, look_direction);
  ComplexVector w = hermitian_solve(cov, v0);
  // Divide by the computed v0^H Sigma^-1 v0 as is; its imaginary part is
  // rounding noise, and keeping it makes w^H v0 = 1 to rounding.
  w /= v0.dot(w);
  return WeightVector(std::move(w), geometry, look_direction);
}

}  // namespace ucmvdr
