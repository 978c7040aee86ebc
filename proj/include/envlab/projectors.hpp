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

#include <string>
#include <vector>

#include "envlab/kinds.hpp"
#include "envlab/state.hpp"

namespace envlab {

/// Rank-1 projector |ket><ket| with a stable id such as "D⊗a".
struct Projector {
  std::string id;
  Ket ket;
};

struct ProjectorSet {
  ProjectorMode mode = ProjectorMode::Custom;
  SpaceDescriptor space;
  std::vector<Projector> projectors;

  std::vector<std::string> ids() const;
  std::size_t size() const { return projectors.size(); }
};

/// Joins factor ids: "R" + "+1" -> "R⊗+1".
std::string product_id(const std::string& a, const std::string& b);

/// The six eigenstates of the Pauli-analog observables on a qubit subsystem,
/// ordered z+, z-, x+, x-, y+, y-, with
///   x± = (|0> ± |1>)/sqrt2,  y± = (|0> ± i|1>)/sqrt2
/// in terms of the subsystem's first and second basis labels.
/// Names: {R, L, H, V, D, A} on a {R, L} subsystem, {+1, -1, h, v, d, a} on
/// {+1, -1}, and {<l0>, <l1>, x+, x-, y+, y-} otherwise.
/// Throws UnsupportedSpace unless the subsystem is two-dimensional.
std::vector<Projector> qubit_eigenstates(const Subsystem& subsystem);

/// FullJoint36: all 6 x 6 products, row-major over (first factor, second
/// factor). ReducedSingle6: the six eigenstates of a single qubit.
/// ConditionalCircular4: products of the two z eigenstates on each factor.
/// Throws UnsupportedSpace for the wrong shape, InvalidArgument for Custom.
ProjectorSet tomography_projectors(ProjectorMode mode, const SpaceDescriptor& space);

/// Arbitrary rank-1 projectors. Throws SpaceMismatch / NotNormalized.
ProjectorSet custom_projectors(SpaceDescriptor space, std::vector<Projector> projectors);

}  // namespace envlab
