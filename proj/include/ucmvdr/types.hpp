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

#ifndef UCMVDR_TYPES_HPP
#define UCMVDR_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ucmvdr {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;

// Domain errors. Argument validation failures use std::invalid_argument.

// Matrix handed to a solver is not numerically positive definite.
class IllConditioned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Array polynomial whose leading coefficient vanishes (degree drops).
class DegenerateLeadingCoefficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero set contains a zero at the look point, so unit gain cannot be imposed.
class ZeroAtLookDirection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Diagonal loading search target outside what the bracket can achieve.
class UnreachableTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Monte Carlo run exceeded the tolerated fraction of failed trials.
class RunAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace ucmvdr

#endif  // UCMVDR_TYPES_HPP
