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

#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "ucmvdr/array_model.hpp"
#include "ucmvdr/beamformers.hpp"
#include "ucmvdr/metrics.hpp"

using namespace ucmvdr;
using ucmvdr::testing::half_wave_manifold;
using ucmvdr::testing::TestRng;

namespace {

// Reference MVDR via an explicit inverse, independent of hermitian_solve.
ComplexVector reference_mvdr(const ComplexMatrix& r, const ComplexVector& v0) {
  const ComplexMatrix inv = r.inverse();
  const ComplexVector num = inv * v0;
  return num / (v0.adjoint() * num)(0);
}

}  // namespace

TEST_CASE("conventional beamformer") {
  for (int n : {2, 5, 11}) {
    const UlaGeometry g(n);
    const WeightVector w = cbf_weights(g, 0.0);
    for (int i = 0; i < n; ++i) CHECK(std::abs(w.weights()(i) - 1.0 / n) < 1e-15);
    CHECK(white_noise_gain(w) == doctest::Approx(n));
  }
  const WeightVector w = cbf_weights(UlaGeometry(11), 0.3);
  CHECK(std::abs(w.response(0.3) - 1.0) < 1e-14);
  // Nulls of the conventional pattern sit at multiples of 2/N from the look.
  CHECK(std::abs(w.response(0.3 + 2.0 / 11.0)) < 1e-14);
}

TEST_CASE("weight vector validation") {
  const UlaGeometry g(4);
  CHECK_THROWS_AS(WeightVector(ComplexVector::Ones(3) / 3.0, g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector(ComplexVector::Ones(4), g, 0.0), std::invalid_argument);
  ComplexVector bad = ComplexVector::Ones(4) / 4.0;
  bad(1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(WeightVector(bad, g, 0.0), std::invalid_argument);
}

TEST_CASE("MVDR on the ensemble covariance") {
  SUBCASE("white noise reduces to the conventional beamformer") {
    const UlaScenario sc(UlaGeometry(7), 0.2, {}, 3.0);
    const WeightVector w = mvdr_weights(ensemble_covariance(sc), sc.geometry(), 0.2);
    const WeightVector c = cbf_weights(sc.geometry(), 0.2);
    CHECK((w.weights() - c.weights()).norm() < 1e-13);
  }
  SUBCASE("single strong interferer scenario") {
    const UlaScenario sc(UlaGeometry(11), 0.0, {SourceSpec(3.0 / 11.0, 1e4)}, 1.0);
    const WeightVector w = mvdr_weights(ensemble_covariance(sc), sc.geometry(), 0.0);
    CHECK(white_noise_gain(w) == doctest::Approx(10.473).epsilon(5e-3 / 10.473));
    CHECK(std::abs(w.response(0.0) - 1.0) < 1e-12);
    CHECK(notch_depth(w, 3.0 / 11.0) < 1e-3);
  }
  SUBCASE("matches an explicit inverse") {
    TestRng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = rng.integer(2, 16);
      const double u0 = rng.uniform(-0.9, 0.9);
      const CovarianceMatrix r(rng.pd_matrix(n), CovarianceKind::kEnsemble);
      const WeightVector w = mvdr_weights(r, UlaGeometry(n), u0);
      const ComplexVector ref = reference_mvdr(r.entries(), half_wave_manifold(n, u0));
      CHECK((w.weights() - ref).norm() / ref.norm() < 1e-10);
    }
  }
  SUBCASE("minimizes output power among distortionless weights") {
    TestRng rng(12);
    const int n = 6;
    const double u0 = 0.1;
    const ComplexMatrix r = rng.pd_matrix(n);
    const CovarianceMatrix cov(r, CovarianceKind::kEnsemble);
    const WeightVector w = mvdr_weights(cov, UlaGeometry(n), u0);
    const double best = quadratic_form(w.weights(), r);
    const ComplexVector v0 = half_wave_manifold(n, u0);
    for (int trial = 0; trial < 1000; ++trial) {
      // Random feasible point: perturb, then restore w^H v0 = 1.
      ComplexVector x = w.weights() + 0.5 * rng.cvector(n);
      x /= std::conj(x.dot(v0));
      CHECK(std::abs(x.dot(v0) - 1.0) < 1e-10);
      CHECK(quadratic_form(x, r) >= best * (1.0 - 1e-12));
    }
  }
}
