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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "ucmvdr/rng.hpp"
#include "ucmvdr/statistics.hpp"

using namespace ucmvdr;
using ucmvdr::testing::TestRng;

TEST_CASE("ECDF basics") {
  const std::vector<double> x{3.0, 1.0, 2.0, 4.0};
  const EcdfCurve c = ecdf(x);
  CHECK(c.values == std::vector<double>{1.0, 2.0, 3.0, 4.0});
  CHECK(c.probabilities == std::vector<double>{0.25, 0.5, 0.75, 1.0});
  CHECK(c.median() == 2.0);
  CHECK(c.quantile(1.0) == 4.0);
  CHECK(c.quantile(0.26) == 2.0);
  CHECK(c.quantile(0.51) == 3.0);
  CHECK(c.evaluate(0.5) == 0.0);
  CHECK(c.evaluate(2.0) == 0.5);
  CHECK(c.evaluate(2.5) == 0.5);
  CHECK(c.evaluate(10.0) == 1.0);

  const std::vector<double> odd{5.0, 1.0, 3.0};
  CHECK(ecdf(odd).median() == 3.0);
}

TEST_CASE("ECDF with ties") {
  const std::vector<double> x{2.0, 1.0, 2.0, 2.0, 3.0};
  const EcdfCurve c = ecdf(x);
  CHECK(c.values == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(c.probabilities[1] == doctest::Approx(0.8));
  CHECK(c.median() == 2.0);
  CHECK(c.sample_count == 5);
}

TEST_CASE("ECDF rejects bad input") {
  const std::vector<double> empty;
  CHECK_THROWS_AS(ecdf(empty), std::invalid_argument);
  const std::vector<double> nan{1.0, std::nan("")};
  CHECK_THROWS_AS(ecdf(nan), std::invalid_argument);
  const std::vector<double> ok{1.0};
  CHECK_THROWS_AS(ecdf(ok).quantile(0.0), std::invalid_argument);
}

TEST_CASE("ECDF of uniform samples is close to the identity") {
  TestRng rng(99);
  std::vector<double> x(10000);
  for (double& v : x) v = rng.uniform();
  const EcdfCurve c = ecdf(x);
  double ks = 0.0;
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    const double below = k == 0 ? 0.0 : c.probabilities[k - 1];
    ks = std::max({ks, std::abs(c.probabilities[k] - c.values[k]),
                   std::abs(below - c.values[k])});
  }
  CHECK(ks < 0.03);
}

TEST_CASE("quantile matches sorted order statistics") {
  TestRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.integer(1, 200);
    std::vector<double> x(n);
    for (double& v : x) v = std::round(rng.uniform(0.0, 20.0));  // forces ties
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const EcdfCurve c = ecdf(x);
    for (double p : {0.1, 0.25, 0.5, 0.9, 1.0}) {
      const int rank = static_cast<int>(std::ceil(p * n - 1e-9));
      CHECK(c.quantile(p) == sorted[std::max(rank, 1) - 1]);
    }
  }
}

TEST_CASE("running moments") {
  TestRng rng(4);
  std::vector<double> x(5000);
  for (double& v : x) v = 1e6 + rng.uniform(-1.0, 1.0);
  RunningMoments m;
  for (double v : x) m.add(v);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= x.size();
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  CHECK(m.count() == x.size());
  CHECK(m.mean() == doctest::Approx(mean).epsilon(1e-14));
  CHECK(m.variance() == doctest::Approx(ss / (x.size() - 1)).epsilon(1e-8));

  RunningMoments one;
  one.add(3.0);
  CHECK(one.variance() == 0.0);
}

TEST_CASE("substream seeds and complex gaussian source") {
  CHECK(substream_seed(1, 0) != substream_seed(1, 1));
  CHECK(substream_seed(1, 5) == substream_seed(1, 5));
  CHECK(substream_seed(1, 5) != substream_seed(2, 5));
  ComplexGaussianSource src(17);
  RunningMoments re, im, power;
  for (int k = 0; k < 200000; ++k) {
    const Complex z = src.draw(4.0);
    re.add(z.real());
    im.add(z.imag());
    power.add(std::norm(z));
  }
  CHECK(std::abs(re.mean()) < 0.02);
  CHECK(std::abs(im.mean()) < 0.02);
  CHECK(re.variance() == doctest::Approx(2.0).epsilon(0.02));
  CHECK(power.mean() == doctest::Approx(4.0).epsilon(0.02));
}
