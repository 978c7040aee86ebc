// Copyright 2026 The envlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "envlab/state.hpp"

#include <algorithm>
#include <cmath>

#include "envlab/error.hpp"
#include "space_index.hpp"

namespace envlab {

Ket::Ket(SpaceDescriptor space, CVector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dimension()) {
    fail(ErrorCode::SpaceMismatch,
         "amplitude vector of length " + std::to_string(amplitudes_.size()) +
             " on a space of dimension " + std::to_string(space_.dimension()));
  }
}

Ket Ket::basis(SpaceDescriptor space, const std::vector<std::string>& labels) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  v(static_cast<Eigen::Index>(space.basis_index(labels))) = 1.0;
  return Ket(std::move(space), std::move(v));
}

Complex Ket::amplitude(const std::vector<std::string>& labels) const {
  return amplitudes_(static_cast<Eigen::Index>(space_.basis_index(labels)));
}

bool Ket::is_normalized(double tol) const {
  return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol;
}

Ket Ket::normalized() const {
  double n = norm();
  if (n < 1e-300) fail(ErrorCode::NotNormalized, "cannot normalize a zero ket");
  return Ket(space_, amplitudes_ / n);
}

Ket Ket::scaled(Complex factor) const {
  return Ket(space_, amplitudes_ * factor);
}

Complex Ket::inner(const Ket& other) const {
  if (!(space_ == other.space_)) {
    fail(ErrorCode::SpaceMismatch, "inner product across different spaces");
  }
  return amplitudes_.dot(other.amplitudes_);
}

Ket Ket::reordered(const std::vector<std::string>& order) const {
  auto [target, map] = detail::reorder_map(space_, order);
  CVector out(amplitudes_.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) =
        amplitudes_(static_cast<Eigen::Index>(map[i]));
  }
  return Ket(std::move(target), std::move(out));
}

DensityMatrix::DensityMatrix(SpaceDescriptor space, CMatrix matrix,
                             double hermitian_tol)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  auto d = static_cast<Eigen::Index>(space_.dimension());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    fail(ErrorCode::SpaceMismatch, "density matrix shape does not match space");
  }
  double worst = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (worst > hermitian_tol) {
    fail(ErrorCode::NotHermitian,
         "deviation from Hermiticity " + std::to_string(worst));
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  if (std::abs(matrix_.trace().real() - 1.0) > kTraceTolerance) {
    fail(ErrorCode::NotNormalized,
         "trace " + std::to_string(matrix_.trace().real()));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(SpaceDescriptor space) {
  auto d = static_cast<Eigen::Index>(space.dimension());
  CMatrix m = CMatrix::Identity(d, d) / static_cast<double>(d);
  return DensityMatrix(std::move(space), std::move(m));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues().minCoeff(); }

bool DensityMatrix::is_physical(double tol) const {
  return min_eigenvalue() >= -tol &&
         std::abs(matrix_.trace().real() - 1.0) <= tol;
}

DensityMatrix DensityMatrix::clipped() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_);
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  w /= w.sum();
  CMatrix m = es.eigenvectors() * w.cast<Complex>().asDiagonal() *
              es.eigenvectors().adjoint();
  return DensityMatrix(space_, m);
}

Ket SchmidtDecomposition::reconstruct() const {
  SpaceDescriptor full = left_space.concat(right_space);
  CVector acc = CVector::Zero(static_cast<Eigen::Index>(full.dimension()));
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    acc += coefficients[i] *
           kron(left_vectors[i].amplitudes(), right_vectors[i].amplitudes());
  }
  return Ket(std::move(full), std::move(acc)).reordered(space.ids());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  SpaceDescriptor space = a.space().concat(b.space());
  return Ket(std::move(space), kron(a.amplitudes(), b.amplitudes()));
}

DensityMatrix density_of(const Ket& psi) {
  if (!psi.is_normalized()) {
    fail(ErrorCode::NotNormalized,
         "squared norm " + std::to_string(psi.amplitudes().squaredNorm()));
  }
  CMatrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(psi.space(), std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& keep) {
  const auto& space = rho.space();
  if (keep.empty() || keep.size() >= space.size()) {
    fail(ErrorCode::InvalidSplit, "keep must be a nonempty proper subset");
  }
  auto split = BipartiteSplit::of(space, keep);
  SpaceDescriptor kept = space.restrict_to(split.left);
  std::vector<std::string> kept_order = kept.ids();
  std::vector<std::string> order = kept_order;
  SpaceDescriptor traced = space.restrict_to(split.right);
  for (const auto& id : traced.ids()) order.push_back(id);

  [[maybe_unused]] auto [perm_space, map] = detail::reorder_map(space, order);
  auto dk = static_cast<Eigen::Index>(kept.dimension());
  auto dt = static_cast<Eigen::Index>(traced.dimension());
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) {
        auto a = static_cast<Eigen::Index>(map[static_cast<std::size_t>(i * dt + t)]);
        auto b = static_cast<Eigen::Index>(map[static_cast<std::size_t>(j * dt + t)]);
        acc += m(a, b);
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix(std::move(kept), std::move(out));
}

double purity(const DensityMatrix& rho) {
  // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().cwiseAbs2().sum();
}

double phase_distance(const Ket& a, const Ket& b) {
  Complex overlap = b.inner(a);
  Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : 1.0;
  return (a.amplitudes() - phase * b.amplitudes()).norm();
}

bool equal_up_to_phase(const Ket& a, const Ket& b, double tol) {
  return phase_distance(a, b) <= tol;
}

CMatrix hermitian_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace envlab
