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

#include <Eigen/SVD>
#include <cmath>

#include "envlab/error.hpp"
#include "envlab/state.hpp"

namespace envlab {
namespace {

constexpr double kZeroCoefficient = 1e-12;
constexpr double kDegenerate = 1e-10;
constexpr double kPivot = 1e-9;

// Gram-Schmidt over the projections P e_0, P e_1, ... of the standard basis.
// The pivot component of each output vector is real and positive, and every
// earlier component is zero, which fixes the basis of a degenerate subspace
// independently of the SVD routine that produced P.
std::vector<CVector> canonical_basis(const CMatrix& projector, std::size_t want) {
  std::vector<CVector> out;
  CMatrix residual = projector;
  for (Eigen::Index i = 0; i < projector.rows() && out.size() < want; ++i) {
    double weight = residual(i, i).real();
    if (weight <= kPivot) continue;
    CVector v = residual.col(i) / std::sqrt(weight);
    residual -= v * v.adjoint();
    out.push_back(std::move(v));
  }
  if (out.size() != want) {
    fail(ErrorCode::InvalidState, "could not complete a canonical Schmidt basis");
  }
  return out;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const Ket& psi,
                                       const BipartiteSplit& split) {
  if (!psi.is_normalized()) {
    fail(ErrorCode::NotNormalized, "Schmidt decomposition needs a unit ket");
  }
  split.validate(psi.space());
  SchmidtDecomposition out;
  out.space = psi.space();
  out.split = split;
  out.left_space = psi.space().restrict_to(split.left);
  out.right_space = psi.space().restrict_to(split.right);

  std::vector<std::string> order = out.left_space.ids();
  for (const auto& id : out.right_space.ids()) order.push_back(id);
  Ket ordered = psi.reordered(order);

  auto dl = static_cast<Eigen::Index>(out.left_space.dimension());
  auto dr = static_cast<Eigen::Index>(out.right_space.dimension());
  CMatrix m(dl, dr);
  for (Eigen::Index i = 0; i < dl; ++i) {
    for (Eigen::Index j = 0; j < dr; ++j) m(i, j) = ordered.amplitudes()(i * dr + j);
  }

  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const auto rank_bound = std::min(dl, dr);

  std::vector<CVector> lefts;
  std::vector<CVector> rights;
  std::vector<double> coeffs;

  Eigen::Index k = 0;
  while (k < rank_bound && sigma(k) >= kZeroCoefficient) {
    Eigen::Index end = k + 1;
    while (end < rank_bound && sigma(end) >= kZeroCoefficient &&
           std::abs(sigma(end) - sigma(k)) <= kDegenerate) {
      ++end;
    }
    CMatrix block = svd.matrixU().middleCols(k, end - k);
    auto basis = canonical_basis(block * block.adjoint(),
                                 static_cast<std::size_t>(end - k));
    for (Eigen::Index g = k; g < end; ++g) {
      const CVector& l = basis[static_cast<std::size_t>(g - k)];
      // (<l| (x) I) psi, divided by its norm.
      CVector r = (l.adjoint() * m).transpose();
      double c = r.norm();
      lefts.push_back(l);
      rights.push_back(r / c);
      coeffs.push_back(c);
    }
    k = end;
  }

  auto zero_count = static_cast<std::size_t>(rank_bound) - coeffs.size();
  if (zero_count > 0) {
    CMatrix pl = CMatrix::Identity(dl, dl);
    for (const auto& l : lefts) pl -= l * l.adjoint();
    CMatrix pr = CMatrix::Identity(dr, dr);
    for (const auto& r : rights) pr -= r * r.adjoint();
    auto extra_l = canonical_basis(pl, zero_count);
    auto extra_r = canonical_basis(pr, zero_count);
    for (std::size_t z = 0; z < zero_count; ++z) {
      lefts.push_back(extra_l[z]);
      rights.push_back(extra_r[z]);
      coeffs.push_back(0.0);
    }
  }

  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out.coefficients.push_back(coeffs[i]);
    out.left_vectors.emplace_back(out.left_space, lefts[i]);
    out.right_vectors.emplace_back(out.right_space, rights[i]);
  }
  return out;
}

}  // namespace envlab
