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

#ifndef UCMVDR_UC_RECTIFY_HPP
#define UCMVDR_UC_RECTIFY_HPP

#include <cstddef>
#include <vector>

#include "ucmvdr/arraypoly.hpp"
#include "ucmvdr/beamformers.hpp"

namespace ucmvdr {

struct ProjectionReport {
  ZeroSet original_zeros;
  // Same order as original_zeros; every entry has unit modulus.
  ZeroSet projected_zeros;
  // Indices whose zero fell inside the main lobe and was moved to a first
  // null of the conventional beampattern.
  std::vector<std::size_t> mainlobe_moved;
  // More than one zero landed on the same first-null point (multiple root).
  bool collapsed_to_multiple_root = false;
};

// Radial projection onto the unit circle with main-lobe exclusion.
//
// For zero r e^{jw}, let d = wrap(w - pi u0). If |d| > 2 pi / N the projection
// is e^{jw}; otherwise the zero moves to e^{j(pi u0 + sgn(d) 2 pi / N)} with
// sgn(0) = +1. |d| == 2 pi / N counts as outside the main lobe.
ProjectionReport project_zeros(const ZeroSet& zeros, double look_direction,
                               int num_sensors);

struct UcResult {
  WeightVector weights;
  ProjectionReport report;
};

// Unit circle rectified MVDR: factor the array polynomial of `smi_weights`,
// project its zeros and resynthesize with unit gain at the look direction.
UcResult uc_mvdr_weights(const WeightVector& smi_weights);

// Direction cosine corresponding to a unit-circle angle, folded into [-1, 1].
double angle_to_direction(double angle);

}  // namespace ucmvdr

#endif  // UCMVDR_UC_RECTIFY_HPP
