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

#ifndef UCMVDR_ARRAYPOLY_HPP
#define UCMVDR_ARRAYPOLY_HPP

#include <span>
#include <vector>

#include "ucmvdr/beamformers.hpp"
#include "ucmvdr/types.hpp"

namespace ucmvdr {

// P(z) = sum_n c_n z^-n, c_n = conj(w_n). Requires half-wavelength spacing so
// that z = exp(j pi u) maps direction cosine to the unit circle.
struct ArrayPolynomial {
  ComplexVector coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  // |c_0| <= kLeadingCoefficientThreshold * max |c_n|.
  bool is_degenerate() const;
  Complex evaluate(Complex z) const;
};

inline constexpr double kLeadingCoefficientThreshold = 1e-14;

// Factored form gain * prod_n (1 - zero_n z^-1).
struct ZeroSet {
  std::vector<Complex> zeros;
  Complex gain{1.0, 0.0};

  Complex evaluate(Complex z) const;
  // Coefficients c_0..c_{N-1} of the expanded product times gain.
  ComplexVector expand() const;

  friend bool operator==(const ZeroSet&, const ZeroSet&) = default;
};

ArrayPolynomial weights_to_polynomial(const WeightVector& w);

// Inverse of weights_to_polynomial. The coefficients must satisfy the unit
// gain constraint for `look_direction`.
WeightVector polynomial_to_weights(const ArrayPolynomial& p,
                                   const UlaGeometry& geometry,
                                   double look_direction);

// Relative residual bound accepted by find_zeros.
inline constexpr double kZeroResidualTolerance = 1e-8;

// Zeros sorted by principal angle in (-pi, pi], ties broken by radius; gain is
// c_0. Throws DegenerateLeadingCoefficient for a vanishing leading
// coefficient and std::invalid_argument for degree < 1.
ZeroSet find_zeros(const ArrayPolynomial& p);

// Weights whose polynomial is prod_n (1 - z_n z^-1) / (1 - z_n z_look^-1),
// z_look = exp(j pi u0); the gain of `zeros` is ignored. Repeated zeros are
// allowed. Throws ZeroAtLookDirection if a zero is within 1e-9 of z_look.
WeightVector synthesize_from_zeros(const ZeroSet& zeros,
                                   const UlaGeometry& geometry,
                                   double look_direction);

// B(u) = w^H v(u) for every u in `grid`.
std::vector<Complex> beampattern(const WeightVector& w,
                                 std::span<const double> grid);

// n evenly spaced direction cosines covering [-1, 1].
std::vector<double> direction_grid(int n);

// Principal value of an angle in (-pi, pi].
double wrap_angle(double angle);

}  // namespace ucmvdr

#endif  // UCMVDR_ARRAYPOLY_HPP
