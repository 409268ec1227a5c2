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
#include "ucmvdr/metrics.hpp"

using namespace ucmvdr;
using ucmvdr::testing::half_wave_manifold;
using ucmvdr::testing::TestRng;

TEST_CASE("white noise gain") {
  CHECK(white_noise_gain(cbf_weights(UlaGeometry(11), 0.0)) == doctest::Approx(11.0));
  TestRng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(2, 20);
    const double u0 = rng.uniform(-1.0, 1.0);
    ComplexVector w = rng.cvector(n);
    w /= std::conj(w.dot(half_wave_manifold(n, u0)));
    // Cauchy-Schwarz: any distortionless weight has WNG <= N.
    CHECK(white_noise_gain(WeightVector(w, UlaGeometry(n), u0)) <= n * (1.0 + 1e-12));
  }
}

TEST_CASE("notch depth") {
  const WeightVector w = cbf_weights(UlaGeometry(4), 0.0);
  CHECK(notch_depth(w, 0.0) == doctest::Approx(1.0));
  CHECK(notch_depth(w, 0.5) < 1e-30);
  // |sum_n exp(-j pi u n)|^2 / 16 at u = 0.25, written out.
  Complex acc = 0.0;
  for (int n = 0; n < 4; ++n) acc += std::polar(1.0, -kPi * 0.25 * n);
  CHECK(notch_depth(w, 0.25) == doctest::Approx(std::norm(acc) / 16.0).epsilon(1e-14));
}

TEST_CASE("output powers") {
  const UlaScenario sc(UlaGeometry(6), 0.0,
                       {SourceSpec(0.4, 100.0), SourceSpec(-0.7, 10.0)}, 2.0);
  TestRng rng(2);
  ComplexVector w = rng.cvector(6);
  w /= std::conj(w.dot(half_wave_manifold(6, 0.0)));
  const WeightVector wv(w, sc.geometry(), 0.0);
  const MetricsRecord m = output_powers(wv, sc);

  // Brute force: w^H (Sigma - sigma_w^2 I) w and sigma_w^2 w^H w.
  const ComplexVector v1 = half_wave_manifold(6, 0.4);
  const ComplexVector v2 = half_wave_manifold(6, -0.7);
  const ComplexMatrix ri = 100.0 * v1 * v1.adjoint() + 10.0 * v2 * v2.adjoint();
  CHECK(m.interferer_power == doctest::Approx((w.adjoint() * ri * w)(0).real()).epsilon(1e-12));
  CHECK(m.noise_power == doctest::Approx(2.0 * w.squaredNorm()).epsilon(1e-14));
  CHECK(m.total_output == doctest::Approx(m.interferer_power + m.noise_power));
  // Total equals w^H Sigma w minus the signal-free check on the full covariance.
  CHECK(m.total_output ==
        doctest::Approx(quadratic_form(w, ensemble_covariance(sc).entries())).epsilon(1e-12));
  REQUIRE(m.notch_depth_per_interferer.size() == 2);
  CHECK(m.interferer_power_per_interferer[0] ==
        doctest::Approx(100.0 * m.notch_depth_per_interferer[0]));
  CHECK(m.worst_notch_depth() ==
        std::max(m.notch_depth_per_interferer[0], m.notch_depth_per_interferer[1]));
  CHECK(m.wng == doctest::Approx(1.0 / w.squaredNorm()));
}

TEST_CASE("no interferers") {
  const UlaScenario sc(UlaGeometry(5), 0.0, {}, 1.0);
  const MetricsRecord m = output_powers(cbf_weights(sc.geometry(), 0.0), sc);
  CHECK(m.interferer_power == 0.0);
  CHECK(m.worst_notch_depth() == 0.0);
  CHECK(m.noise_power == doctest::Approx(0.2));
}

TEST_CASE("output SINR of MVDR on the ensemble covariance") {
  const UlaScenario sc(UlaGeometry(8), 0.0, {SourceSpec(0.5, 1e3)}, 1.0);
  const CovarianceMatrix r = ensemble_covariance(sc);
  const WeightVector w = mvdr_weights(r, sc.geometry(), 0.0);
  const ComplexVector v0 = half_wave_manifold(8, 0.0);
  const double optimum = (v0.adjoint() * r.entries().inverse() * v0)(0).real();
  CHECK(output_sinr(w, r) == doctest::Approx(optimum).epsilon(1e-10));
  CHECK(output_sinr(cbf_weights(sc.geometry(), 0.0), r) < optimum);
}
