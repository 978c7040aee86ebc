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

#include <vector>

#include "envlab/error.hpp"
#include "envlab/projectors.hpp"
#include "envlab/records.hpp"

namespace envlab {

enum class ReconstructionMethod { LinearInversion, MaxLikelihood };
enum class InitialState { MaximallyMixed, LinearInversionSeed };

struct ReconstructionOptions {
  ReconstructionMethod method = ReconstructionMethod::MaxLikelihood;
  int max_iterations = 10000;
  double convergence_tol = 1e-10;
  InitialState initial_state = InitialState::LinearInversionSeed;
  /// Linear inversion only: clip negative eigenvalues and renormalize.
  bool clip = false;

  /// Throws InvalidArgument.
  void validate() const;
};

/// Identity and Pauli-analog observables in a qubit's own basis, indexed
/// 0 = I, 1 = X, 2 = Y, 3 = Z, consistent with qubit_eigenstates().
CMatrix pauli(int index);

/// Stokes-like parameters. Two-qubit records give 16 entries S[4 i + j] for
/// sigma_i (x) sigma_j; single-qubit records give 4. Products are estimated
/// per setting as signed sums over its four outcomes divided by the setting
/// total; single-factor parameters pool every setting that measures that
/// factor's observable. S[0] = 1.
/// Throws MissingConfiguration for an incomplete record, EmptyCounts for a
/// setting with no events, UnsupportedSpace for a non-tomographic set.
Eigen::VectorXd stokes_parameters(const CountTable& counts, const ProjectorSet& set);

/// rho = 2^-n sum_k S_k sigma_k. Hermitian with unit trace by construction;
/// under noise it may have small negative eigenvalues (not an error).
DensityMatrix linear_inversion(const CountTable& counts, const ProjectorSet& set,
                               bool clip = false);

struct MleResult {
  DensityMatrix state;
  int iterations = 0;
  /// Per accepted iterate, starting with the seed; nondecreasing.
  std::vector<double> log_likelihood;
  bool converged = false;
};

/// Raised when the iteration budget runs out; carries the best iterate.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& message, MleResult best)
      : Error(ErrorCode::ConvergenceFailure, message), best_(std::move(best)) {}
  const MleResult& best() const { return best_; }

 private:
  MleResult best_;
};

/// sum_i f_i log p_i(rho) with f the observed frequencies and p the
/// generative probabilities renormalized over the set.
double log_likelihood(const DensityMatrix& rho, const CountTable& counts,
                      const ProjectorSet& set);

/// Damped R rho R fixed-point ascent: R_t = (1 - t) I + t R / K with t halved
/// whenever the likelihood would decrease. Stops when the improvement falls
/// below `convergence_tol`. Throws ConvergenceFailure, MissingConfiguration.
MleResult mle_reconstruct(const CountTable& counts, const ProjectorSet& set,
                          const ReconstructionOptions& options = {});

/// Dispatches on options.method.
DensityMatrix reconstruct(const CountTable& counts, const ProjectorSet& set,
                          const ReconstructionOptions& options = {});

/// The subsystems a record of this provenance was taken on: the experiment's
/// two-qubit space for joint modes, its system qubit for ReducedSingle6.
SpaceDescriptor record_space(const Provenance& provenance);

/// Rebuilds the projector set a record was taken with from its provenance.
/// Throws UnsupportedSpace for Custom records.
ProjectorSet record_projectors(const CountTable& counts);

/// Single-qubit reconstruction from a ReducedSingle6 record: Stokes inversion,
/// then MLE polish when options.method is MaxLikelihood.
DensityMatrix reduced_tomography(const CountTable& counts6,
                                 const ReconstructionOptions& options = {});

}  // namespace envlab
