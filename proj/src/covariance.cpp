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

#include "ucmvdr/covariance.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ucmvdr/array_model.hpp"

namespace ucmvdr {

const char* to_string(CovarianceKind kind) {
  switch (kind) {
    case CovarianceKind::kEnsemble:
      return "ensemble";
    case CovarianceKind::kSample:
      return "sample";
    case CovarianceKind::kLoaded:
      return "loaded";
  }
  return "unknown";
}

CovarianceMatrix::CovarianceMatrix(ComplexMatrix entries, CovarianceKind kind)
    : entries_(std::move(entries)), kind_(kind) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("covariance matrix must be square and nonempty");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("covariance matrix has non-finite entries");
  }
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double asymmetry = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-12 * scale) {
    throw std::invalid_argument("covariance matrix is not Hermitian");
  }
}

DlFactor::DlFactor(double delta) : delta_(delta) {
  if (!(delta_ >= 0.0) || !std::isfinite(delta_)) {
    throw std::invalid_argument("diagonal loading must be finite and >= 0");
  }
}

CovarianceMatrix sample_covariance(const SnapshotBatch& batch) {
  const int snapshots = batch.num_snapshots();
  if (snapshots < 1) {
    throw std::invalid_argument("sample covariance needs at least one snapshot");
  }
  const int n = batch.num_sensors();
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  s.selfadjointView<Eigen::Lower>().rankUpdate(batch.data);
  s = s.selfadjointView<Eigen::Lower>();
  s /= static_cast<double>(snapshots);
  for (int i = 0; i < n; ++i) s(i, i) = s(i, i).real();
  return CovarianceMatrix(std::move(s), CovarianceKind::kSample);
}

CovarianceMatrix diagonal_load(const CovarianceMatrix& cov, DlFactor delta) {
  ComplexMatrix loaded = cov.entries();
  loaded.diagonal().array() += delta.value();
  return CovarianceMatrix(std::move(loaded), CovarianceKind::kLoaded);
}

namespace {

void check_conditioning(const Eigen::VectorXd& eigenvalues, const char* what) {
  const double lo = eigenvalues.minCoeff();
  const double hi = eigenvalues.maxCoeff();
  if (!(hi > 0.0) || !(lo > kConditionThreshold * hi)) {
    std::ostringstream msg;
    msg << what << " is not positive definite to working precision (lambda_min="
        << lo << ", lambda_max=" << hi << ")";
    throw IllConditioned(msg.str());
  }
}

}  // namespace

ComplexVector hermitian_solve(const CovarianceMatrix& a,
                              const ComplexVector& b) {
  if (b.size() != a.size()) {
    throw std::invalid_argument("hermitian_solve: dimension mismatch");
  }
  const ComplexMatrix& m = a.entries();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m, Eigen::EigenvaluesOnly);
  check_conditioning(eig.eigenvalues(), to_string(a.kind()));

  Eigen::LLT<ComplexMatrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw IllConditioned("Cholesky factorization failed");
  }
  ComplexVector x = llt.solve(b);
  // One step of iterative refinement.
  const ComplexVector r = b - m * x;
  x += llt.solve(r);
  return x;
}

LoadingSweep::LoadingSweep(const CovarianceMatrix& cov) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(cov.entries());
  if (eig.info() != Eigen::Success) {
    throw IllConditioned("eigendecomposition did not converge");
  }
  eigenvalues_ = eig.eigenvalues();
  eigenvectors_ = eig.eigenvectors();
}

ComplexVector LoadingSweep::project(const ComplexVector& b) const {
  return eigenvectors_.adjoint() * b;
}

ComplexVector LoadingSweep::solve(double delta, const ComplexVector& b) const {
  DlFactor checked(delta);
  check_conditioning((eigenvalues_.array() + checked.value()).matrix(),
                     "loaded covariance");
  ComplexVector coords = project(b);
  coords.array() /= (eigenvalues_.array() + delta).cast<Complex>();
  return eigenvectors_ * coords;
}

}  // namespace ucmvdr
