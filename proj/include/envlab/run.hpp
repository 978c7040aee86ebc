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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "envlab/analysis.hpp"
#include "envlab/prover.hpp"

namespace envlab {

struct RunConfig {
  ExperimentKind experiment = ExperimentKind::Local;
  std::int64_t shots_per_setting = 10000;
  NoiseModel noise;
  /// Required; there is no entropy-based default.
  std::optional<std::uint64_t> seed;
  int resamples = 1000;
  std::string output_dir;
  std::vector<std::string> report_formats = {"json", "csv", "text"};
  bool parallel = false;
  VerdictPolicy policy;
  /// Negative control: the environment swap becomes a phase gate.
  bool corrupt_environment_swap = false;
  bool companion = true;
  int companion_resamples = 50;

  /// Throws InvalidArgument.
  void validate() const;
  nlohmann::json to_json() const;
};

/// "none", "shot", "shot+jitter=<radians>". Throws ParseError.
NoiseModel parse_noise(const std::string& text);
std::string noise_to_string(const NoiseModel& noise);

/// Plate angle errors drawn for one swap configuration.
struct PlateErrors {
  double system = 0.0;
  double environment = 0.0;
};

struct RunResult {
  RunConfig config;
  RunRecord record;
  PremiseReport report;
  std::array<PlateErrors, 4> plate_errors{};
  /// Clipped linear-inversion reconstructions written next to the counts.
  std::vector<std::pair<std::string, DensityMatrix>> linear_states;
};

/// Acquires every record and evaluates the report, in memory.
RunResult simulate(const RunConfig& config);

/// Writes counts, densities and the report under
/// output_dir/<experiment>/. Returns the written paths in a fixed order.
/// Throws Io.
std::vector<std::string> write_artifacts(const RunResult& result);

/// simulate + write_artifacts (when output_dir is set).
RunResult run_experiment(const RunConfig& config);

struct ProverRun {
  prover::ProofChain chain;
  prover::VerificationReport verification;
  std::vector<std::string> files;
};

/// Squared amplitudes as rationals ("2/3"). Writes <stem>.json and
/// <stem>.txt under output_dir when it is set. Throws ParseError,
/// InvalidState.
ProverRun run_prover(const std::vector<std::string>& weights, const std::string& output_dir,
                     const std::string& stem = "proof");

}  // namespace envlab
