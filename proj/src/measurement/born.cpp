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

#include "envlab/born.hpp"

#include <algorithm>

#include "envlab/error.hpp"

namespace envlab {

ProbabilityTable born_probabilities(const DensityMatrix& rho, const ProjectorSet& set) {
  if (!(rho.space() == set.space)) {
    fail(ErrorCode::SpaceMismatch, "state and projector set live on different spaces");
  }
  ProbabilityTable out;
  out.provenance.mode = set.mode;
  out.entries.reserve(set.size());
  for (const auto& p : set.projectors) {
    const CVector& v = p.ket.amplitudes();
    double value = v.dot(rho.matrix() * v).real();
    if (value < -1e-12 || value > 1.0 + 1e-12) {
      fail(ErrorCode::InvalidState, "probability " + std::to_string(value) +
                                        " for projector '" + p.id + "'");
    }
    out.entries.push_back({p.id, std::clamp(value, 0.0, 1.0)});
  }
  return out;
}

}  // namespace envlab
