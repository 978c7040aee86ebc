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

#include <array>

#include "envlab/experiment.hpp"
#include "envlab/tomography.hpp"

namespace envlab {
namespace {

// Eigenstate k of qubit_eigenstates(): observable and eigenvalue sign.
constexpr std::array<int, 6> kAxis = {3, 3, 1, 1, 2, 2};
constexpr std::array<int, 6> kSign = {1, -1, 1, -1, 1, -1};

double count_of(const CountTable& counts, const ProjectorSet& set, std::size_t k) {
  return static_cast<double>(counts.count(set.projectors[k].id));
}

Eigen::VectorXd single_stokes(const CountTable& counts, const ProjectorSet& set) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(4);
  s(0) = 1.0;
  for (std::size_t a = 0; a < 6; a += 2) {
    double plus = count_of(counts, set, a);
    double minus = count_of(counts, set, a + 1);
    if (plus + minus <= 0.0) {
      fail(ErrorCode::EmptyCounts, "no events in setting " + set.projectors[a].id);
    }
    s(kAxis[a]) = (plus - minus) / (plus + minus);
  }
  return s;
}

Eigen::VectorXd joint_stokes(const CountTable& counts, const ProjectorSet& set) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(16);
  // Pooled single-factor sums: signed and total per observable.
  std::array<double, 4> first_signed{}, first_total{}, second_signed{}, second_total{};
  for (std::size_t a = 0; a < 6; a += 2) {
    for (std::size_t b = 0; b < 6; b += 2) {
      double signed_sum = 0.0;
      double total = 0.0;
      for (std::size_t da = 0; da < 2; ++da) {
        for (std::size_t db = 0; db < 2; ++db) {
          std::size_t i = a + da;
          std::size_t j = b + db;
          double n = count_of(counts, set, 6 * i + j);
          total += n;
          signed_sum += kSign[i] * kSign[j] * n;
          first_signed[kAxis[i]] += kSign[i] * n;
          second_signed[kAxis[j]] += kSign[j] * n;
        }
      }
      if (total <= 0.0) {
        fail(ErrorCode::EmptyCounts,
             "no events in setting " + set.projectors[6 * a + b].id);
      }
      first_total[kAxis[a]] += total;
      second_total[kAxis[b]] += total;
      s(4 * kAxis[a] + kAxis[b]) = signed_sum / total;
    }
  }
  s(0) = 1.0;
  for (int p = 1; p < 4; ++p) {
    s(4 * p) = first_signed[p] / first_total[p];
    s(p) = second_signed[p] / second_total[p];
  }
  return s;
}

}  // namespace

void ReconstructionOptions::validate() const {
  if (max_iterations < 1) fail(ErrorCode::InvalidArgument, "max_iterations < 1");
  if (!(convergence_tol > 0.0)) {
    fail(ErrorCode::InvalidArgument, "convergence_tol must be positive");
  }
}

CMatrix pauli(int index) {
  const Complex i(0.0, 1.0);
  CMatrix m(2, 2);
  switch (index) {
    case 0: m << 1.0, 0.0, 0.0, 1.0; break;
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, -i, i, 0.0; break;
    case 3: m << 1.0, 0.0, 0.0, -1.0; break;
    default: fail(ErrorCode::InvalidArgument, "Pauli index out of range");
  }
  return m;
}

Eigen::VectorXd stokes_parameters(const CountTable& counts, const ProjectorSet& set) {
  if (set.mode == ProjectorMode::ReducedSingle6 && set.size() == 6) {
    return single_stokes(counts, set);
  }
  if (set.mode == ProjectorMode::FullJoint36 && set.size() == 36) {
    return joint_stokes(counts, set);
  }
  fail(ErrorCode::UnsupportedSpace,
       "Stokes inversion needs a FullJoint36 or ReducedSingle6 projector set");
}

DensityMatrix linear_inversion(const CountTable& counts, const ProjectorSet& set,
                               bool clip) {
  Eigen::VectorXd s = stokes_parameters(counts, set);
  CMatrix rho;
  if (s.size() == 4) {
    rho = CMatrix::Zero(2, 2);
    for (int p = 0; p < 4; ++p) rho += s(p) * pauli(p);
    rho /= 2.0;
  } else {
    rho = CMatrix::Zero(4, 4);
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) rho += s(4 * p + q) * kron(pauli(p), pauli(q));
    }
    rho /= 4.0;
  }
  DensityMatrix out(set.space, rho);
  return clip ? out.clipped() : out;
}

SpaceDescriptor record_space(const Provenance& provenance) {
  const bool nonlocal = provenance.experiment == ExperimentKind::Nonlocal;
  SpaceDescriptor joint =
      nonlocal ? SpaceDescriptor({sam_subsystem(ids::kSamSignal),
                                  oam_subsystem(ids::kOamIdler)})
               : SpaceDescriptor({sam_subsystem(ids::kSam), oam_subsystem(ids::kOam)});
  if (provenance.mode == ProjectorMode::ReducedSingle6) {
    return joint.restrict_to({roles(provenance.experiment).system});
  }
  return joint;
}

ProjectorSet record_projectors(const CountTable& counts) {
  if (counts.provenance.mode == ProjectorMode::Custom) {
    fail(ErrorCode::UnsupportedSpace, "custom records carry no projector geometry");
  }
  return tomography_projectors(counts.provenance.mode, record_space(counts.provenance));
}

}  // namespace envlab
