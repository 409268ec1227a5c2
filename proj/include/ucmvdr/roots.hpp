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

#ifndef UCMVDR_ROOTS_HPP
#define UCMVDR_ROOTS_HPP

#include <span>
#include <vector>

#include "ucmvdr/types.hpp"

namespace ucmvdr {

// Roots of a0 z^m + a1 z^(m-1) + ... + am given as {a0, ..., am}, a0 != 0.
//
// Eigenvalues of the balanced companion matrix, each polished by Newton steps
// in extended precision. If the scaled residual of any root still exceeds
// `tolerance`, all roots go through Aberth-Ehrlich simultaneous iteration.
// Output order is unspecified.
std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients,
                                      double tolerance = 1e-12);

// Backward-error style residual of `z` as a root of the descending
// coefficients: |q(z)| / (max_k |a_k| * max(1, |z|)^m). For |z| >= 1 this is
// the reversed (z^-1) polynomial evaluated at z relative to its largest
// coefficient.
double scaled_root_residual(std::span<const Complex> coefficients, Complex z);

}  // namespace ucmvdr

#endif  // UCMVDR_ROOTS_HPP
