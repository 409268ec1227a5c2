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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "test_util.hpp"
#include "ucmvdr/array_model.hpp"
#include "ucmvdr/covariance.hpp"

using namespace ucmvdr;
using ucmvdr::testing::max_abs_diff;
using ucmvdr::testing::TestRng;

TEST_CASE("sample covariance") {
  SUBCASE("single all-ones snapshot is the all-ones matrix") {
    SnapshotBatch b{ComplexMatrix::Ones(5, 1), 0};
    const CovarianceMatrix s = sample_covariance(b);
    CHECK(s.kind() == CovarianceKind::kSample);
    CHECK(max_abs_diff(s.entries(), ComplexMatrix::Ones(5, 5)) < 1e-15);
  }
  SUBCASE("trace equals mean snapshot energy") {
    TestRng rng(3);
    SnapshotBatch b{ComplexMatrix(7, 9), 0};
    for (int l = 0; l < 9; ++l) b.data.col(l) = rng.cvector(7);
    const CovarianceMatrix s = sample_covariance(b);
    double energy = 0.0;
    for (int l = 0; l < 9; ++l) energy += b.data.col(l).squaredNorm();
    CHECK(s.entries().trace().real() == doctest::Approx(energy / 9).epsilon(1e-13));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(s.entries());
    CHECK(eig.eigenvalues().minCoeff() > -1e-12);
  }
  SUBCASE("rank is at most L") {
    TestRng rng(4);
    SnapshotBatch b{ComplexMatrix(8, 3), 0};
    for (int l = 0; l < 3; ++l) b.data.col(l) = rng.cvector(8);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sample_covariance(b).entries());
    int nonzero = 0;
    for (int i = 0; i < 8; ++i) nonzero += eig.eigenvalues()(i) > 1e-10 ? 1 : 0;
    CHECK(nonzero == 3);
  }
  SUBCASE("noise-only converges to sigma_w^2 I") {
    const UlaScenario sc(UlaGeometry(5), 0.0, {}, 2.0);
    const CovarianceMatrix s = sample_covariance(generate_snapshots(sc, 100000, 8));
    CHECK(max_abs_diff(s.entries(), 2.0 * ComplexMatrix::Identity(5, 5)) < 0.04);
  }
  SUBCASE("invariant under snapshot permutation") {
    TestRng rng(5);
    SnapshotBatch b{ComplexMatrix(6, 12), 0};
    for (int l = 0; l < 12; ++l) b.data.col(l) = rng.cvector(6);
    std::vector<int> order(12);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), std::mt19937(1));
    SnapshotBatch p{ComplexMatrix(6, 12), 0};
    for (int l = 0; l < 12; ++l) p.data.col(l) = b.data.col(order[l]);
    CHECK(max_abs_diff(sample_covariance(b).entries(),
                       sample_covariance(p).entries()) < 1e-13);
  }
}

TEST_CASE("covariance matrix validation") {
  ComplexMatrix m = ComplexMatrix::Identity(3, 3);
  m(0, 1) = Complex(1.0, 0.5);
  CHECK_THROWS_AS(CovarianceMatrix(m, CovarianceKind::kSample), std::invalid_argument);
  CHECK_THROWS_AS(CovarianceMatrix(ComplexMatrix::Ones(2, 3), CovarianceKind::kSample),
                  std::invalid_argument);
  CHECK_THROWS_AS(DlFactor(-1e-3), std::invalid_argument);
  CHECK(DlFactor::from_db(10.0).value() == doctest::Approx(10.0));
}

TEST_CASE("diagonal loading") {
  TestRng rng(9);
  const CovarianceMatrix s(rng.pd_matrix(6), CovarianceKind::kSample);
  SUBCASE("zero loading is the identity map") {
    const CovarianceMatrix l = diagonal_load(s, DlFactor(0.0));
    CHECK(l.entries() == s.entries());
    CHECK(l.kind() == CovarianceKind::kLoaded);
  }
  SUBCASE("I + 1 I = 2 I") {
    const CovarianceMatrix i(ComplexMatrix::Identity(4, 4), CovarianceKind::kSample);
    CHECK(diagonal_load(i, DlFactor(1.0)).entries() == 2.0 * ComplexMatrix::Identity(4, 4));
  }
  SUBCASE("eigenvalues shift by delta") {
    for (int trial = 0; trial < 20; ++trial) {
      const CovarianceMatrix h(rng.hermitian(8), CovarianceKind::kSample);
      const double delta = rng.uniform(0.0, 5.0);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> before(h.entries(), Eigen::EigenvaluesOnly);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> after(
          diagonal_load(h, DlFactor(delta)).entries(), Eigen::EigenvaluesOnly);
      const Eigen::VectorXd shift =
          after.eigenvalues() - before.eigenvalues() - Eigen::VectorXd::Constant(8, delta);
      CHECK(shift.cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("loading composes additively") {
    const CovarianceMatrix ab =
        diagonal_load(diagonal_load(s, DlFactor(0.3)), DlFactor(1.7));
    const CovarianceMatrix sum = diagonal_load(s, DlFactor(2.0));
    CHECK(max_abs_diff(ab.entries(), sum.entries()) < 1e-14);
  }
}

TEST_CASE("hermitian solve") {
  SUBCASE("identity and scaled identity") {
    TestRng rng(1);
    const ComplexVector b = rng.cvector(5);
    const CovarianceMatrix eye(ComplexMatrix::Identity(5, 5), CovarianceKind::kEnsemble);
    CHECK(max_abs_diff(hermitian_solve(eye, b), b) < 1e-15);
    const CovarianceMatrix two(2.0 * ComplexMatrix::Identity(5, 5), CovarianceKind::kEnsemble);
    const ComplexVector x = hermitian_solve(two, ComplexVector::Ones(5));
    CHECK(max_abs_diff(x, 0.5 * ComplexVector::Ones(5)) < 1e-15);
  }
  SUBCASE("residual and recovery on random PD systems") {
    TestRng rng(42);
    for (int n : {4, 11, 51}) {
      for (int trial = 0; trial < 100; ++trial) {
        const CovarianceMatrix a(rng.pd_matrix(n), CovarianceKind::kLoaded);
        const ComplexVector x_true = rng.cvector(n);
        const ComplexVector b = a.entries() * x_true;
        const ComplexVector x = hermitian_solve(a, b);
        CHECK((a.entries() * x - b).norm() / b.norm() < 1e-10);
        CHECK((x - x_true).norm() / x_true.norm() < 1e-9);
      }
    }
  }
  SUBCASE("rank deficient sample covariance is rejected") {
    const UlaScenario sc(UlaGeometry(8), 0.0, {SourceSpec(0.4, 100.0)}, 1.0);
    const CovarianceMatrix s = sample_covariance(generate_snapshots(sc, 5, 1));
    CHECK_THROWS_AS(hermitian_solve(s, ComplexVector::Ones(8)), IllConditioned);
    // Loading restores definiteness.
    CHECK_NOTHROW(hermitian_solve(diagonal_load(s, DlFactor(1.0)), ComplexVector::Ones(8)));
  }
  SUBCASE("dimension mismatch") {
    const CovarianceMatrix eye(ComplexMatrix::Identity(3, 3), CovarianceKind::kEnsemble);
    CHECK_THROWS_AS(hermitian_solve(eye, ComplexVector::Ones(4)), std::invalid_argument);
  }
}

TEST_CASE("loading sweep agrees with explicit loaded solve") {
  const UlaScenario sc(UlaGeometry(11), 0.0, {SourceSpec(3.0 / 11.0, 1e4)}, 1.0);
  const CovarianceMatrix s = sample_covariance(generate_snapshots(sc, 12, 77));
  const LoadingSweep sweep(s);
  const ComplexVector b = steering_vector(sc.geometry(), 0.0);
  for (double delta : {1e-6, 1e-3, 0.5, 10.0, 1e4}) {
    const ComplexVector direct = hermitian_solve(diagonal_load(s, DlFactor(delta)), b);
    const ComplexVector fast = sweep.solve(delta, b);
    CHECK((direct - fast).norm() / direct.norm() < 1e-9);
  }
  CHECK_THROWS_AS(sweep.solve(-1.0, b), std::invalid_argument);
}
