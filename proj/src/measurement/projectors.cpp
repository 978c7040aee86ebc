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

#include "envlab/projectors.hpp"

#include <cmath>

#include "envlab/error.hpp"

namespace envlab {

std::vector<std::string> ProjectorSet::ids() const {
  std::vector<std::string> out;
  for (const auto& p : projectors) out.push_back(p.id);
  return out;
}

std::string product_id(const std::string& a, const std::string& b) {
  return a + "⊗" + b;
}

std::vector<Projector> qubit_eigenstates(const Subsystem& subsystem) {
  if (subsystem.dim() != 2) {
    fail(ErrorCode::UnsupportedSpace,
         "subsystem '" + subsystem.id + "' is not two-dimensional");
  }
  std::vector<std::string> names;
  const auto& l = subsystem.labels;
  if (l == std::vector<std::string>{"R", "L"}) {
    names = {"R", "L", "H", "V", "D", "A"};
  } else if (l == std::vector<std::string>{"+1", "-1"}) {
    names = {"+1", "-1", "h", "v", "d", "a"};
  } else {
    names = {l[0], l[1], "x+", "x-", "y+", "y-"};
  }
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  std::vector<CVector> vecs(6, CVector(2));
  vecs[0] << 1.0, 0.0;
  vecs[1] << 0.0, 1.0;
  vecs[2] << s, s;
  vecs[3] << s, -s;
  vecs[4] << s, s * i;
  vecs[5] << s, -s * i;
  SpaceDescriptor space({subsystem});
  std::vector<Projector> out;
  for (std::size_t k = 0; k < 6; ++k) out.push_back({names[k], Ket(space, vecs[k])});
  return out;
}

ProjectorSet tomography_projectors(ProjectorMode mode, const SpaceDescriptor& space) {
  ProjectorSet set;
  set.mode = mode;
  set.space = space;
  switch (mode) {
    case ProjectorMode::ReducedSingle6: {
      if (space.size() != 1) {
        fail(ErrorCode::UnsupportedSpace, "reduced tomography needs one qubit");
      }
      set.projectors = qubit_eigenstates(space.subsystems()[0]);
      return set;
    }
    case ProjectorMode::FullJoint36:
    case ProjectorMode::ConditionalCircular4: {
      if (space.size() != 2) {
        fail(ErrorCode::UnsupportedSpace, "joint tomography needs two qubits");
      }
      auto a = qubit_eigenstates(space.subsystems()[0]);
      auto b = qubit_eigenstates(space.subsystems()[1]);
      std::size_t n = mode == ProjectorMode::FullJoint36 ? 6 : 2;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          set.projectors.push_back(
              {product_id(a[i].id, b[j].id), tensor(a[i].ket, b[j].ket)});
        }
      }
      return set;
    }
    case ProjectorMode::Custom:
      break;
  }
  fail(ErrorCode::InvalidArgument, "custom projector sets are built explicitly");
}

ProjectorSet custom_projectors(SpaceDescriptor space, std::vector<Projector> projectors) {
  for (const auto& p : projectors) {
    if (!(p.ket.space() == space)) {
      fail(ErrorCode::SpaceMismatch, "projector '" + p.id + "' on another space");
    }
    if (!p.ket.is_normalized()) {
      fail(ErrorCode::NotNormalized, "projector '" + p.id + "' is not normalized");
    }
  }
  return {ProjectorMode::Custom, std::move(space), std::move(projectors)};
}

}  // namespace envlab
