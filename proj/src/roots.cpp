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

#include "ucmvdr/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ucmvdr {

namespace {

using LongComplex = std::complex<long double>;

LongComplex widen(Complex z) { return {z.real(), z.imag()}; }
Complex narrow(LongComplex z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Value and derivative of q(z) = sum_k a_k z^(m-k).
void horner(std::span<const Complex> a, LongComplex z, LongComplex* value,
            LongComplex* derivative) {
  LongComplex p = widen(a[0]);
  LongComplex dp = 0.0L;
  for (std::size_t k = 1; k < a.size(); ++k) {
    dp = dp * z + p;
    p = p * z + widen(a[k]);
  }
  *value = p;
  *derivative = dp;
}

// Value and derivative of r(y) = sum_k a_k y^k = y^m q(1/y).
void horner_reversed(std::span<const Complex> a, LongComplex y,
                     LongComplex* value, LongComplex* derivative) {
  const std::size_t m = a.size() - 1;
  LongComplex p = widen(a[m]);
  LongComplex dp = 0.0L;
  for (std::size_t k = m; k-- > 0;) {
    dp = dp * y + p;
    p = p * y + widen(a[k]);
  }
  *value = p;
  *derivative = dp;
}

// Newton on q inside the unit disk and on the reversed polynomial outside it,
// so the iteration always works with terms bounded by max |a_k|.
LongComplex newton_step(std::span<const Complex> a, LongComplex z) {
  LongComplex value, derivative;
  if (std::abs(z) <= 1.0L) {
    horner(a, z, &value, &derivative);
    if (derivative == 0.0L) return z;
    return z - value / derivative;
  }
  const LongComplex y = 1.0L / z;
  horner_reversed(a, y, &value, &derivative);
  if (derivative == 0.0L) return z;
  const LongComplex y_next = y - value / derivative;
  if (y_next == 0.0L) return z;
  return 1.0L / y_next;
}

void balance(ComplexMatrix& m) {
  constexpr double kRadix = 2.0;
  constexpr double kRadixSq = kRadix * kRadix;
  const Eigen::Index n = m.rows();
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadixSq;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadixSq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

std::vector<Complex> companion_eigenvalues(std::span<const Complex> a) {
  const std::size_t m = a.size() - 1;
  ComplexMatrix companion = ComplexMatrix::Zero(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    companion(0, k) = -a[k + 1] / a[0];
  }
  for (std::size_t k = 1; k < m; ++k) companion(k, k - 1) = 1.0;
  balance(companion);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("companion eigenvalue iteration did not converge");
  }
  std::vector<Complex> roots(m);
  for (std::size_t k = 0; k < m; ++k) roots[k] = solver.eigenvalues()(k);
  return roots;
}

double max_residual(std::span<const Complex> a, const std::vector<Complex>& z) {
  double worst = 0.0;
  for (const Complex& root : z) {
    worst = std::max(worst, scaled_root_residual(a, root));
  }
  return worst;
}

// Polishes each root independently; a step is kept only if it lowers the
// scaled residual.
void polish(std::span<const Complex> a, std::vector<Complex>& roots) {
  for (Complex& root : roots) {
    double residual = scaled_root_residual(a, root);
    LongComplex z = widen(root);
    for (int iter = 0; iter < 4 && residual > 0.0; ++iter) {
      const LongComplex next = newton_step(a, z);
      const Complex candidate = narrow(next);
      if (!std::isfinite(candidate.real()) || !std::isfinite(candidate.imag())) {
        break;
      }
      const double r = scaled_root_residual(a, candidate);
      if (!(r < residual)) break;
      residual = r;
      z = next;
      root = candidate;
    }
  }
}

// Aberth-Ehrlich simultaneous iteration started from `roots`.
std::vector<Complex> aberth(std::span<const Complex> a,
                            std::vector<Complex> start) {
  const std::size_t m = start.size();
  std::vector<LongComplex> z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = widen(start[i]);
  // Coincident starting points stall the iteration; nudge them apart.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (z[i] == z[j]) {
        z[i] *= LongComplex(std::cos(1e-7L * (i + 1)), std::sin(1e-7L * (i + 1)));
      }
    }
  }
  for (int iter = 0; iter < 500; ++iter) {
    long double largest_step = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
      LongComplex value, derivative;
      horner(a, z[i], &value, &derivative);
      if (value == 0.0L) continue;
      const LongComplex ratio = value / derivative;
      LongComplex repulsion = 0.0L;
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) repulsion += 1.0L / (z[i] - z[j]);
      }
      const LongComplex step = ratio / (1.0L - ratio * repulsion);
      if (!std::isfinite(std::abs(step))) continue;
      z[i] -= step;
      largest_step = std::max(largest_step, std::abs(step) /
                                                std::max(1.0L, std::abs(z[i])));
    }
    if (largest_step < 1e-17L) break;
  }
  std::vector<Complex> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = narrow(z[i]);
  return out;
}

}  // namespace

double scaled_root_residual(std::span<const Complex> a, Complex z) {
  double scale = 0.0;
  for (const Complex& c : a) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  LongComplex value, derivative;
  if (std::abs(z) <= 1.0) {
    horner(a, widen(z), &value, &derivative);
  } else {
    horner_reversed(a, 1.0L / widen(z), &value, &derivative);
  }
  return static_cast<double>(std::abs(value)) / scale;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients,
                                      double tolerance) {
  if (coefficients.empty() || coefficients[0] == 0.0) {
    throw std::invalid_argument("polynomial_roots: leading coefficient is zero");
  }
  // Exact zero trailing coefficients are roots at the origin.
  std::size_t end = coefficients.size();
  std::vector<Complex> roots;
  while (end > 1 && coefficients[end - 1] == 0.0) {
    roots.emplace_back(0.0, 0.0);
    --end;
  }
  const std::span<const Complex> a = coefficients.first(end);
  const std::size_t degree = a.size() - 1;
  if (degree == 0) return roots;
  if (degree == 1) {
    roots.push_back(-a[1] / a[0]);
    return roots;
  }

  std::vector<Complex> found = companion_eigenvalues(a);
  polish(a, found);
  if (max_residual(a, found) > tolerance) {
    std::vector<Complex> refined = aberth(a, found);
    polish(a, refined);
    if (max_residual(a, refined) < max_residual(a, found)) {
      found = std::move(refined);
    }
  }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

}  // namespace ucmvdr
