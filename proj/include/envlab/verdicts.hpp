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

// Premise verdicts computed from detection counts alone. Nothing here may
// depend on a state vector, a density matrix or the Born-rule evaluator; the
// library links against envlab_records only and the test suite audits that.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "envlab/records.hpp"

namespace envlab {

struct Estimate {
  double value = 0.0;
  double sigma = 0.0;
};

struct LabeledEstimate {
  std::string label;
  Estimate estimate;
};

/// Sum over shared keys of sqrt(p1 * p2). Throws IncomparableRecords when the
/// key sets differ.
double bhattacharyya(const ProbabilityTable& p1, const ProbabilityTable& p2);

/// Value on the observed frequencies; sigma is the standard deviation over
/// `resamples` parametric bootstrap replicates. Each replicate redraws every
/// count as Poisson(observed count) and divides by the observed grand total,
/// so fluctuations of the total are part of the spread. Tables recorded
/// without shot noise are held fixed. Throws InvalidArgument (resamples <
/// 100), IncomparableRecords, EmptyCounts.
Estimate bhattacharyya_with_uncertainty(const CountTable& c1, const CountTable& c2,
                                        int resamples, std::uint64_t seed);

struct ConditionalCell {
  std::string outcome;    // first-factor label, e.g. "R"
  std::string condition;  // second-factor label, e.g. "+1"
  Estimate estimate;
  std::int64_t condition_total = 0;
};

/// P(outcome | condition) from a ConditionalCircular4 record whose ids have
/// the form "<outcome>⊗<condition>".
struct ConditionalTable {
  std::vector<std::string> outcomes;
  std::vector<std::string> conditions;
  std::vector<ConditionalCell> cells;  // condition-major

  /// Throws MissingConfiguration.
  const ConditionalCell& cell(const std::string& outcome,
                              const std::string& condition) const;
};

/// Binomial standard errors sqrt(p (1 - p) / n) when the record carries shot
/// noise, zero otherwise. Throws EmptyCounts when a conditioning label has no
/// events, MissingConfiguration when the grid is incomplete.
ConditionalTable conditional_frequencies(const CountTable& counts);

/// Declared pass rule: value + sigma_multiplier * sigma >= threshold.
struct VerdictPolicy {
  double threshold = 0.99;
  double sigma_multiplier = 3.0;

  bool passes(const Estimate& e) const {
    return e.value + sigma_multiplier * e.sigma >= threshold;
  }
};

/// Everything the verdicts may look at: count tables indexed by
/// SwapConfig::index().
struct RunRecord {
  ExperimentKind experiment = ExperimentKind::Local;
  std::array<std::optional<CountTable>, 4> full;
  std::array<std::optional<CountTable>, 4> reduced;
  std::optional<CountTable> conditional;
};

struct VerdictOptions {
  int resamples = 1000;
  std::uint64_t seed = 0;
  VerdictPolicy policy;
  /// Run the bootstrap comparisons on separate threads. Each comparison has
  /// its own derived seed, so the result is identical either way.
  bool parallel = false;
};

struct PremiseVerdicts {
  ExperimentKind experiment = ExperimentKind::Local;
  /// B(original, twice swapped) on the full joint records.
  Estimate premise1;
  /// vs_system_swapped, vs_environment_swapped, vs_twice_swapped on the
  /// reduced records.
  std::vector<LabeledEstimate> premise2;
  ConditionalTable premise3;
  /// For each conditioning label, its best-correlated outcome.
  std::vector<LabeledEstimate> premise3_links;
  bool premise1_pass = false;
  bool premise2_pass = false;
  bool premise3_pass = false;
  VerdictPolicy policy;
  /// Which records fed the verdicts.
  std::vector<std::string> lineage;

  bool all_pass() const { return premise1_pass && premise2_pass && premise3_pass; }
};

/// Throws MissingConfiguration when a required record is absent.
PremiseVerdicts evaluate_premises(const RunRecord& record,
                                  const VerdictOptions& options);

}  // namespace envlab
