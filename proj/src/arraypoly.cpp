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

#include "ucmvdr/arraypoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ucmvdr/roots.hpp"

namespace ucmvdr {

namespace {

using LongComplex = std::complex<long double>;

void require_half_wavelength(const UlaGeometry& geometry) {
  if (!geometry.is_half_wavelength()) {
    throw std::invalid_argument(
        "array polynomial mapping z = exp(j pi u) needs d/lambda = 1/2");
  }
}

// Coefficients of prod_n (1 - zeros_n z^-1), extended precision.
std::vector<LongComplex> expand_product(const std::vector<Complex>& zeros) {
  std::vector<LongComplex> c(zeros.size() + 1, LongComplex(0.0L));
  c[0] = 1.0L;
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    const LongComplex root(zeros[k].real(), zeros[k].imag());
    for (std::size_t i = k + 1; i > 0; --i) c[i] -= root * c[i - 1];
  }
  return c;
}

}  // namespace

double wrap_angle(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

bool ArrayPolynomial::is_degenerate() const {
  if (coefficients.size() == 0) return true;
  const double largest = coefficients.cwiseAbs().maxCoeff();
  return !(std::abs(coefficients(0)) > kLeadingCoefficientThreshold * largest);
}

Complex ArrayPolynomial::evaluate(Complex z) const {
  // sum_n c_n z^-n by Horner in z^-1, from the highest power down.
  const Complex z_inv = 1.0 / z;
  Complex acc = 0.0;
  for (Eigen::Index n = coefficients.size(); n-- > 0;) {
    acc = acc * z_inv + coefficients(n);
  }
  return acc;
}

Complex ZeroSet::evaluate(Complex z) const {
  const Complex z_inv = 1.0 / z;
  Complex acc = gain;
  for (const Complex& zero : zeros) acc *= (1.0 - zero * z_inv);
  return acc;
}

ComplexVector ZeroSet::expand() const {
  const std::vector<LongComplex> c = expand_product(zeros);
  ComplexVector out(static_cast<Eigen::Index>(c.size()));
  const LongComplex g(gain.real(), gain.imag());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const LongComplex v = g * c[i];
    out(static_cast<Eigen::Index>(i)) = Complex(static_cast<double>(v.real()),
                                                static_cast<double>(v.imag()));
  }
  return out;
}

ArrayPolynomial weights_to_polynomial(const WeightVector& w) {
  require_half_wavelength(w.geometry());
  return ArrayPolynomial{w.weights().conjugate()};
}

WeightVector polynomial_to_weights(const ArrayPolynomial& p,
                                   const UlaGeometry& geometry,
                                   double look_direction) {
  require_half_wavelength(geometry);
  return WeightVector(p.coefficients.conjugate(), geometry, look_direction);
}

ZeroSet find_zeros(const ArrayPolynomial& p) {
  if (p.degree() < 1) {
    throw std::invalid_argument("find_zeros: polynomial degree must be >= 1");
  }
  if (p.is_degenerate()) {
    std::ostringstream msg;
    msg << "leading coefficient |c_0| = " << std::abs(p.coefficients(0))
        << " is negligible; polynomial degree drops below " << p.degree();
    throw DegenerateLeadingCoefficient(msg.str());
  }
  // z^(N-1) P(z) has the coefficients c_0..c_{N-1} in descending order.
  const std::span<const Complex> descending(p.coefficients.data(),
                                            p.coefficients.size());
  ZeroSet out;
  out.zeros = polynomial_roots(descending);
  out.gain = p.coefficients(0);

  double worst = 0.0;
  for (const Complex& z : out.zeros) {
    worst = std::max(worst, scaled_root_residual(descending, z));
  }
  if (!(worst < kZeroResidualTolerance)) {
    std::ostringstream msg;
    msg << "root finder residual " << worst << " exceeds "
        << kZeroResidualTolerance;
    throw std::runtime_error(msg.str());
  }

  std::sort(out.zeros.begin(), out.zeros.end(),
            [](const Complex& a, const Complex& b) {
              const double angle_a = wrap_angle(std::arg(a));
              const double angle_b = wrap_angle(std::arg(b));
              if (angle_a != angle_b) return angle_a < angle_b;
              return std::abs(a) < std::abs(b);
            });
  return out;
}

WeightVector synthesize_from_zeros(const ZeroSet& zeros,
                                   const UlaGeometry& geometry,
                                   double look_direction) {
  require_half_wavelength(geometry);
  if (static_cast<int>(zeros.zeros.size()) + 1 != geometry.num_sensors()) {
    throw std::invalid_argument("zero count must be N - 1");
  }
  const Complex z_look = std::polar(1.0, kPi * look_direction);
  for (const Complex& zero : zeros.zeros) {
    if (std::abs(zero - z_look) < 1e-9) {
      std::ostringstream msg;
      msg << "zero " << zero << " lies on the look direction point " << z_look;
      throw ZeroAtLookDirection(msg.str());
    }
  }

  std::vector<LongComplex> c = expand_product(zeros.zeros);
  // Unit gain at z_look: divide by the expanded polynomial's value there,
  // which equals prod_n (1 - zero_n / z_look).
  const LongComplex look_inv(std::cos(kPi * look_direction),
                             -std::sin(kPi * look_direction));
  LongComplex at_look = 0.0L;
  for (std::size_t n = c.size(); n-- > 0;) at_look = at_look * look_inv + c[n];

  ComplexVector w(geometry.num_sensors());
  for (std::size_t n = 0; n < c.size(); ++n) {
    const LongComplex coeff = c[n] / at_look;
    w(static_cast<Eigen::Index>(n)) =
        Complex(static_cast<double>(coeff.real()),
                -static_cast<double>(coeff.imag()));
  }
  return WeightVector(std::move(w), geometry, look_direction);
}

std::vector<Complex> beampattern(const WeightVector& w,
                                 std::span<const double> grid) {
  std::vector<Complex> out;
  out.reserve(grid.size());
  for (double u : grid) out.push_back(w.response(u));
  return out;
}

std::vector<double> direction_grid(int n) {
  if (n < 2) throw std::invalid_argument("direction grid needs >= 2 points");
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) {
    grid[k] = -1.0 + 2.0 * static_cast<double>(k) / (n - 1);
  }
  grid.back() = 1.0;
  return grid;
}

}  // namespace ucmvdr
