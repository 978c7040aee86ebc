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

#include <functional>
#include <future>

#include "envlab/error.hpp"
#include "envlab/verdicts.hpp"

namespace envlab {
namespace {

const CountTable& require(const std::optional<CountTable>& t, const char* family,
                          SwapConfig config) {
  if (!t) {
    fail(ErrorCode::MissingConfiguration,
         std::string(family) + " record for " + std::string(to_string(config)) +
             " is missing");
  }
  return *t;
}

std::string lineage_entry(const char* family, const CountTable& t) {
  return std::string("counts:") + family + "/" +
         std::string(to_string(t.provenance.swap)) + "/" +
         std::string(to_string(t.provenance.mode)) + "/seed=" +
         std::to_string(t.seed);
}

}  // namespace

PremiseVerdicts evaluate_premises(const RunRecord& record,
                                  const VerdictOptions& options) {
  PremiseVerdicts out;
  out.experiment = record.experiment;
  out.policy = options.policy;

  const auto& full_original = require(record.full[0], "full", SwapConfig::original());
  const auto& full_twice =
      require(record.full[3], "full", SwapConfig::twice_swapped());
  const auto& reduced_original =
      require(record.reduced[0], "reduced", SwapConfig::original());
  if (!record.conditional) {
    fail(ErrorCode::MissingConfiguration, "conditional record is missing");
  }

  // Comparison k uses the derived seed (seed, k), independent of scheduling.
  struct Job {
    const CountTable* a;
    const CountTable* b;
  };
  std::vector<Job> jobs{{&full_original, &full_twice}};
  static constexpr const char* kLabels[] = {"vs_system_swapped",
                                            "vs_environment_swapped",
                                            "vs_twice_swapped"};
  for (std::size_t k = 1; k < 4; ++k) {
    jobs.push_back({&reduced_original,
                    &require(record.reduced[k], "reduced", kAllSwapConfigs[k])});
  }
  auto run = [&](std::size_t k) {
    return bhattacharyya_with_uncertainty(*jobs[k].a, *jobs[k].b,
                                          options.resamples,
                                          mix_seed(options.seed, k));
  };
  std::vector<Estimate> results(jobs.size());
  if (options.parallel) {
    std::vector<std::future<Estimate>> futures;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      futures.push_back(std::async(std::launch::async, run, k));
    }
    for (std::size_t k = 0; k < jobs.size(); ++k) results[k] = futures[k].get();
  } else {
    for (std::size_t k = 0; k < jobs.size(); ++k) results[k] = run(k);
  }

  out.premise1 = results[0];
  out.premise1_pass = options.policy.passes(out.premise1);
  out.premise2_pass = true;
  for (std::size_t k = 1; k < 4; ++k) {
    out.premise2.push_back({kLabels[k - 1], results[k]});
    out.premise2_pass = out.premise2_pass && options.policy.passes(results[k]);
  }

  out.premise3 = conditional_frequencies(*record.conditional);
  out.premise3_pass = true;
  for (const auto& c : out.premise3.conditions) {
    const ConditionalCell* best = nullptr;
    for (const auto& cell : out.premise3.cells) {
      if (cell.condition != c) continue;
      if (!best || cell.estimate.value > best->estimate.value) best = &cell;
    }
    out.premise3_links.push_back({best->outcome + "|" + c, best->estimate});
    out.premise3_pass = out.premise3_pass && options.policy.passes(best->estimate);
  }

  out.lineage.push_back(lineage_entry("full", full_original));
  out.lineage.push_back(lineage_entry("full", full_twice));
  for (std::size_t k = 0; k < 4; ++k) {
    out.lineage.push_back(lineage_entry("reduced", *record.reduced[k]));
  }
  out.lineage.push_back(lineage_entry("conditional", *record.conditional));
  return out;
}

}  // namespace envlab
