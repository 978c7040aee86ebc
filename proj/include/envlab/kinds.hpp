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

#include <array>
#include <string>
#include <string_view>

namespace envlab {

enum class ExperimentKind { Nonlocal, Local };

std::string_view to_string(ExperimentKind kind);
/// "nonlocal" / "local". Throws ParseError.
ExperimentKind parse_experiment(std::string_view text);

struct SwapConfig {
  bool apply_system_swap = false;
  bool apply_environment_swap = false;

  static constexpr SwapConfig original() { return {false, false}; }
  static constexpr SwapConfig system_swapped() { return {true, false}; }
  static constexpr SwapConfig environment_swapped() { return {false, true}; }
  static constexpr SwapConfig twice_swapped() { return {true, true}; }

  /// 0..3 in the order original, system, environment, twice.
  constexpr std::size_t index() const {
    return (apply_system_swap ? 1u : 0u) + (apply_environment_swap ? 2u : 0u);
  }
  bool operator==(const SwapConfig&) const = default;
};

inline constexpr std::array<SwapConfig, 4> kAllSwapConfigs = {
    SwapConfig::original(), SwapConfig::system_swapped(),
    SwapConfig::environment_swapped(), SwapConfig::twice_swapped()};

/// "original", "system_swapped", "environment_swapped", "twice_swapped".
std::string_view to_string(SwapConfig config);
SwapConfig parse_swap_config(std::string_view text);

enum class ProjectorMode {
  FullJoint36,
  ReducedSingle6,
  ConditionalCircular4,
  /// Caller-supplied projector list with no tomographic structure.
  Custom,
};

std::string_view to_string(ProjectorMode mode);
ProjectorMode parse_projector_mode(std::string_view text);

/// Number of measurement settings (basis choices) a complete record of this
/// mode contains; each setting receives `shots_per_setting` shots.
/// Custom records count every projector as its own setting.
std::size_t settings_per_record(ProjectorMode mode, std::size_t projector_count);

}  // namespace envlab
