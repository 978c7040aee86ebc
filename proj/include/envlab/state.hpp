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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "envlab/space.hpp"

namespace envlab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;

/// Amplitude vector over a labeled composite space.
class Ket {
 public:
  /// Throws SpaceMismatch when the length differs from the space dimension.
  Ket(SpaceDescriptor space, CVector amplitudes);

  /// Product basis ket, one label per subsystem in space order.
  static Ket basis(SpaceDescriptor space, const std::vector<std::string>& labels);

  const SpaceDescriptor& space() const { return space_; }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(const std::vector<std::string>& labels) const;

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kNormTolerance) const;
  /// Throws NotNormalized for a (near-)zero vector.
  Ket normalized() const;
  Ket scaled(Complex factor) const;

  /// <this|other>; throws SpaceMismatch.
  Complex inner(const Ket& other) const;

  /// Same state with subsystems reordered to `order` (a permutation of ids).
  Ket reordered(const std::vector<std::string>& order) const;

 private:
  SpaceDescriptor space_;
  CVector amplitudes_;
};

/// Hermitian, unit-trace operator. Positivity is not a constructor invariant
/// (linear inversion may leave small negative eigenvalues); see is_physical.
class DensityMatrix {
 public:
  /// Throws SpaceMismatch, NotHermitian (beyond `hermitian_tol`) or
  /// NotNormalized (trace off by more than kTraceTolerance).
  DensityMatrix(SpaceDescriptor space, CMatrix matrix,
                double hermitian_tol = kHermitianTolerance);

  static DensityMatrix maximally_mixed(SpaceDescriptor space);

  const SpaceDescriptor& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return space_.dimension(); }

  Eigen::VectorXd eigenvalues() const;
  double min_eigenvalue() const;
  bool is_physical(double tol = 1e-10) const;
  /// Negative eigenvalues set to zero, then trace renormalized.
  DensityMatrix clipped() const;

 private:
  SpaceDescriptor space_;
  CMatrix matrix_;
};

struct SchmidtDecomposition {
  SpaceDescriptor space;
  BipartiteSplit split;
  SpaceDescriptor left_space;
  SpaceDescriptor right_space;
  /// Nonincreasing, nonnegative; entries below 1e-12 are exactly zero.
  std::vector<double> coefficients;
  std::vector<Ket> left_vectors;
  std::vector<Ket> right_vectors;

  /// Sum_i c_i |l_i> (x) |r_i>, reordered back onto `space`.
  Ket reconstruct() const;
};

/// Kronecker product; throws DuplicateSubsystem on shared ids.
Ket tensor(const Ket& a, const Ket& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Outer product; throws NotNormalized.
DensityMatrix density_of(const Ket& psi);

/// Reduced state on `keep` (space order preserved). Throws InvalidSplit.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& keep);

SchmidtDecomposition schmidt_decompose(const Ket& psi,
                                       const BipartiteSplit& split);

double purity(const DensityMatrix& rho);

/// max_phi |<a|b>| style comparison: distance min_phi || a - e^{i phi} b ||.
double phase_distance(const Ket& a, const Ket& b);
bool equal_up_to_phase(const Ket& a, const Ket& b, double tol);

/// Principal square root of a Hermitian PSD matrix (negative eigenvalues
/// clamped to zero).
CMatrix hermitian_sqrt(const CMatrix& m);

}  // namespace envlab
