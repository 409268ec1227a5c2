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

#ifndef UCMVDR_BEAMFORMERS_HPP
#define UCMVDR_BEAMFORMERS_HPP

#include "ucmvdr/array_model.hpp"
#include "ucmvdr/covariance.hpp"
#include "ucmvdr/types.hpp"

namespace ucmvdr {

// Tolerance of the distortionless constraint |w^H v(u0) - 1|.
inline constexpr double kDistortionlessTolerance = 1e-10;

// Beamformer weights for a given array, carrying the look direction whose
// unit-gain constraint they satisfy. The constraint is checked on
// construction.
class WeightVector {
 public:
  WeightVector(ComplexVector weights, UlaGeometry geometry,
               double look_direction);

  const ComplexVector& weights() const { return weights_; }
  const UlaGeometry& geometry() const { return geometry_; }
  double look_direction() const { return look_direction_; }
  int size() const { return static_cast<int>(weights_.size()); }

  // w^H v(u).
  Complex response(double u) const;

 private:
  ComplexVector weights_;
  UlaGeometry geometry_;
  double look_direction_;
};

// Conventional beamformer v(u0) / N.
WeightVector cbf_weights(const UlaGeometry& geometry, double look_direction);

// MVDR weights Sigma^{-1} v0 / (v0^H Sigma^{-1} v0). With a sample covariance
// this is the SMI beamformer; with a loaded one, DL MVDR.
WeightVector mvdr_weights(const CovarianceMatrix& cov,
                          const UlaGeometry& geometry, double look_direction);

}  // namespace ucmvdr

#endif  // UCMVDR_BEAMFORMERS_HPP
