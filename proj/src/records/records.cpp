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

#include "envlab/records.hpp"

#include <cmath>

#include "envlab/error.hpp"

namespace envlab {

std::string_view to_string(ExperimentKind kind) {
  return kind == ExperimentKind::Nonlocal ? "nonlocal" : "local";
}

ExperimentKind parse_experiment(std::string_view text) {
  if (text == "nonlocal") return ExperimentKind::Nonlocal;
  if (text == "local") return ExperimentKind::Local;
  fail(ErrorCode::ParseError, "unknown experiment '" + std::string(text) + "'");
}

std::string_view to_string(SwapConfig config) {
  switch (config.index()) {
    case 0: return "original";
    case 1: return "system_swapped";
    case 2: return "environment_swapped";
    default: return "twice_swapped";
  }
}

SwapConfig parse_swap_config(std::string_view text) {
  for (auto c : kAllSwapConfigs) {
    if (to_string(c) == text) return c;
  }
  fail(ErrorCode::ParseError, "unknown swap config '" + std::string(text) + "'");
}

std::string_view to_string(ProjectorMode mode) {
  switch (mode) {
    case ProjectorMode::FullJoint36: return "FullJoint36";
    case ProjectorMode::ReducedSingle6: return "ReducedSingle6";
    case ProjectorMode::ConditionalCircular4: return "ConditionalCircular4";
    case ProjectorMode::Custom: return "Custom";
  }
  return "Custom";
}

ProjectorMode parse_projector_mode(std::string_view text) {
  for (auto m : {ProjectorMode::FullJoint36, ProjectorMode::ReducedSingle6,
                 ProjectorMode::ConditionalCircular4, ProjectorMode::Custom}) {
    if (to_string(m) == text) return m;
  }
  fail(ErrorCode::ParseError, "unknown projector mode '" + std::string(text) + "'");
}

std::size_t settings_per_record(ProjectorMode mode, std::size_t projector_count) {
  switch (mode) {
    case ProjectorMode::FullJoint36: return 9;
    case ProjectorMode::ReducedSingle6: return 3;
    case ProjectorMode::ConditionalCircular4: return 1;
    case ProjectorMode::Custom: return projector_count;
  }
  return projector_count;
}

void NoiseModel::validate() const {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "efficiency must lie in (0, 1]");
  }
  if (!(background_rate >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "background rate must be >= 0");
  }
  if (!(unitary_jitter >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "unitary jitter must be >= 0");
  }
}

std::optional<std::int64_t> CountTable::find(const std::string& projector_id) const {
  for (const auto& e : entries) {
    if (e.projector_id == projector_id) return e.count;
  }
  return std::nullopt;
}

std::int64_t CountTable::count(const std::string& projector_id) const {
  auto c = find(projector_id);
  if (!c) {
    fail(ErrorCode::MissingConfiguration,
         "no count recorded for projector '" + projector_id + "'");
  }
  return *c;
}

std::int64_t CountTable::grand_total() const {
  std::int64_t total = 0;
  for (const auto& e : entries) total += e.count;
  return total;
}

std::vector<std::string> CountTable::ids() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.projector_id);
  return out;
}

double ProbabilityTable::value(const std::string& projector_id) const {
  for (const auto& e : entries) {
    if (e.projector_id == projector_id) return e.value;
  }
  fail(ErrorCode::MissingConfiguration,
       "no entry for projector '" + projector_id + "'");
}

double ProbabilityTable::sum() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.value;
  return s;
}

ProbabilityTable frequencies(const CountTable& counts) {
  std::int64_t total = counts.grand_total();
  if (total <= 0) fail(ErrorCode::EmptyCounts, "count table has no events");
  ProbabilityTable out;
  out.normalization = static_cast<double>(total);
  out.provenance = counts.provenance;
  out.entries.reserve(counts.entries.size());
  for (const auto& e : counts.entries) {
    out.entries.push_back(
        {e.projector_id, static_cast<double>(e.count) / out.normalization});
  }
  return out;
}

}  // namespace envlab
