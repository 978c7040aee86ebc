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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "envlab/kinds.hpp"

namespace envlab {

struct NoiseModel {
  bool shot_noise = true;
  double efficiency = 1.0;
  double background_rate = 0.0;
  /// Standard deviation, in radians, of the wave-plate angle error drawn per
  /// swap configuration.
  double unitary_jitter = 0.0;

  static NoiseModel none() { return {false, 1.0, 0.0, 0.0}; }
  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
  bool operator==(const NoiseModel&) const = default;
};

struct Provenance {
  ExperimentKind experiment = ExperimentKind::Local;
  SwapConfig swap;
  ProjectorMode mode = ProjectorMode::Custom;
  bool operator==(const Provenance&) const = default;
};

struct CountEntry {
  std::string projector_id;
  std::int64_t count = 0;
  bool operator==(const CountEntry&) const = default;
};

/// Detection counts keyed by projector id, in projector-set order.
struct CountTable {
  std::vector<CountEntry> entries;
  std::int64_t total_shots = 0;
  std::uint64_t seed = 0;
  Provenance provenance;
  /// Whether the counts are a Poisson draw. Noiseless tables are exact
  /// expectations and carry no sampling uncertainty.
  bool shot_noise = false;

  /// Throws MissingConfiguration.
  std::int64_t count(const std::string& projector_id) const;
  std::optional<std::int64_t> find(const std::string& projector_id) const;
  std::int64_t grand_total() const;
  std::vector<std::string> ids() const;

  bool operator==(const CountTable&) const = default;
};

struct ProbabilityEntry {
  std::string projector_id;
  double value = 0.0;
};

struct ProbabilityTable {
  std::vector<ProbabilityEntry> entries;
  /// The divisor that produced the entries (grand total for frequencies,
  /// 1 for generative probabilities).
  double normalization = 1.0;
  Provenance provenance;

  /// Throws MissingConfiguration.
  double value(const std::string& projector_id) const;
  double sum() const;
};

/// count / grand total. Throws EmptyCounts when the grand total is zero.
ProbabilityTable frequencies(const CountTable& counts);

/// Per-projector counts. Without shot noise: round(efficiency * shots * p +
/// background). With shot noise: Poisson with that mean, each projector drawing
/// from its own stream derived from (seed, projector index), so the table does
/// not depend on evaluation order or thread count. Throws InvalidArgument for
/// shots_per_setting <= 0.
CountTable sample_counts(const ProbabilityTable& probs,
                         std::int64_t shots_per_setting,
                         const NoiseModel& noise, std::uint64_t seed);

/// splitmix64 finalizer; the documented stream-derivation mix.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// CSV with a two-line metadata header:
///   total_shots,seed,experiment,swap_config,mode,shot_noise
///   <values>
///   projector_id,count
///   <one row per projector>
void write_csv(std::ostream& out, const CountTable& counts);
std::string to_csv(const CountTable& counts);
/// Throws ParseError.
CountTable read_csv(std::istream& in);
CountTable parse_csv(const std::string& text);

}  // namespace envlab
