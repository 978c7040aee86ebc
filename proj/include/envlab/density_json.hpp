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

#include "json.hpp"

#include "envlab/state.hpp"

namespace envlab {

/// {"schema_version": 1, "subsystems": [{"id", "labels"}...],
///  "matrix": [[[re, im], ...], ...]}
nlohmann::json density_to_json(const DensityMatrix& rho);

/// Throws ParseError on malformed input, NotHermitian beyond 1e-8,
/// NotNormalized on a bad trace.
DensityMatrix density_from_json(const nlohmann::json& j);

nlohmann::json space_to_json(const SpaceDescriptor& space);
SpaceDescriptor space_from_json(const nlohmann::json& j);

}  // namespace envlab
