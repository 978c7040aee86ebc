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

// The generative Born-rule evaluator. It drives the count simulator and the
// likelihood in tomography; premise verdicts must never reach it (see
// verdicts.hpp), which the test suite checks on the built archives.

#include "envlab/projectors.hpp"
#include "envlab/records.hpp"

namespace envlab {

/// <pi|rho|pi> per projector, clamped to [0, 1]. Throws SpaceMismatch, or
/// InvalidState if an entry falls outside [-1e-12, 1 + 1e-12].
ProbabilityTable born_probabilities(const DensityMatrix& rho, const ProjectorSet& set);

}  // namespace envlab
