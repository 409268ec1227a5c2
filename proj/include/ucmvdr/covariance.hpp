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

#ifndef UCMVDR_COVARIANCE_HPP
#define UCMVDR_COVARIANCE_HPP

#include "ucmvdr/types.hpp"

namespace ucmvdr {

struct SnapshotBatch;

enum class CovarianceKind { kEnsemble, kSample, kLoaded };

const char* to_string(CovarianceKind kind);

// Square Hermitian matrix tagged with how it was obtained. Construction
// checks shape and Hermitian symmetry (1e-12 relative to the largest entry);
// definiteness is checked where it matters, by the solver.
class CovarianceMatrix {
 public:
  CovarianceMatrix(ComplexMatrix entries, CovarianceKind kind);

  const ComplexMatrix& entries() const { return entries_; }
  CovarianceKind kind() const { return kind_; }
  int size() const { return static_cast<int>(entries_.rows()); }

 private:
  ComplexMatrix entries_;
  CovarianceKind kind_;
};

// Diagonal loading level in linear power units.
class DlFactor {
 public:
  explicit DlFactor(double delta);
  static DlFactor from_db(double delta_db) {
    return DlFactor(db_to_linear(delta_db));
  }

  double value() const { return delta_; }
  double db() const { return linear_to_db(delta_); }

 private:
  double delta_;
};

// S = (1/L) sum_l x_l x_l^H.
CovarianceMatrix sample_covariance(const SnapshotBatch& batch);

// S + delta I, tagged kLoaded.
CovarianceMatrix diagonal_load(const CovarianceMatrix& cov, DlFactor delta);

// Relative threshold on lambda_min / lambda_max below which a matrix is
// treated as singular.
inline constexpr double kConditionThreshold = 1e-12;

// Solves A x = b for Hermitian positive definite A via Cholesky.
// Throws IllConditioned when lambda_min <= kConditionThreshold * lambda_max.
ComplexVector hermitian_solve(const CovarianceMatrix& a,
                              const ComplexVector& b);

// Eigendecomposition of a Hermitian matrix kept around so that
// (A + delta I)^{-1} b can be formed for many loading levels in O(N^2)
// each. Used by the loading searches, which sweep delta per trial.
class LoadingSweep {
 public:
  explicit LoadingSweep(const CovarianceMatrix& cov);

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }

  // Same contract as hermitian_solve(diagonal_load(cov, delta), b).
  ComplexVector solve(double delta, const ComplexVector& b) const;

  // Coordinates of b in the eigenbasis, U^H b.
  ComplexVector project(const ComplexVector& b) const;

 private:
  Eigen::VectorXd eigenvalues_;
  ComplexMatrix eigenvectors_;
};

}  // namespace ucmvdr

#endif  // UCMVDR_COVARIANCE_HPP
