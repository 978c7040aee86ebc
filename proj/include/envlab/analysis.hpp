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

// Report assembly. Verdicts come from envlab_verdicts and see counts only;
// the companion metrics below are tomographic and are reported next to the
// verdicts, never fed into them.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "envlab/tomography.hpp"
#include "envlab/verdicts.hpp"

namespace envlab {

/// Uhlmann fidelity with the outer square, (Tr sqrt(sqrt(a) b sqrt(a)))^2.
/// Throws SpaceMismatch.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

struct CompanionMetric {
  std::string name;
  /// Value on the maximum-likelihood reconstruction, when it was computed.
  std::optional<double> mle;
  /// Value on the clipped linear-inversion reconstruction.
  double linear = 0.0;
  /// Spread of the linear-inversion value over Poisson resamples.
  double sigma = 0.0;
};

struct CompanionOptions {
  bool mle = true;
  int resamples = 50;
  std::uint64_t seed = 0;
  ReconstructionOptions reconstruction;
};

struct CompanionMetrics {
  std::string fidelity_convention = "uhlmann_squared";
  std::string sigma_method = "linear_inversion_poisson_bootstrap";
  int resamples = 0;
  /// "full:original_vs_twice_swapped", "reduced:original_vs_<config>".
  std::vector<CompanionMetric> fidelities;
  /// "reduced:<config>" for the four swap configurations.
  std::vector<CompanionMetric> purities;
  /// Reconstructions by name, e.g. "full_original_mle".
  std::vector<std::pair<std::string, DensityMatrix>> states;
  /// MLE runs that hit the iteration cap; their best iterate is used.
  std::vector<std::string> unconverged;
};

/// Throws MissingConfiguration when a full or reduced record is absent.
CompanionMetrics companion_metrics(const RunRecord& record, const CompanionOptions& options);

struct PremiseReport {
  PremiseVerdicts verdicts;
  std::optional<CompanionMetrics> companion;
};

PremiseReport premise_report(const RunRecord& record, const VerdictOptions& verdicts,
                             const std::optional<CompanionOptions>& companion);

inline constexpr int kReportSchemaVersion = 1;

/// Stable field names; `config` is embedded verbatim.
nlohmann::json report_to_json(const PremiseReport& report, const nlohmann::json& config);
/// metric,label,value,sigma,pass with one row per metric.
std::string report_to_csv(const PremiseReport& report);
std::string report_to_text(const PremiseReport& report);

/// Shortest round-trip decimal for a double; used by every text output.
std::string format_number(double x);

}  // namespace envlab
