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

#include <algorithm>
#include <cmath>
#include <random>

#include "envlab/analysis.hpp"
#include "envlab/error.hpp"

namespace envlab {
namespace {

constexpr std::size_t kConfigs = 4;

const CountTable& need(const std::optional<CountTable>& t, const char* family, std::size_t k) {
  if (!t) {
    fail(ErrorCode::MissingConfiguration,
         std::string(family) + " record for " + std::string(to_string(kAllSwapConfigs[k])) +
             " is missing");
  }
  return *t;
}

CountTable poisson_resample(const CountTable& t, std::mt19937_64& rng) {
  CountTable out = t;
  if (!t.shot_noise) return out;
  for (auto& e : out.entries) {
    if (e.count > 0) {
      std::poisson_distribution<std::int64_t> poisson(static_cast<double>(e.count));
      e.count = poisson(rng);
    }
  }
  return out;
}

struct Tables {
  std::array<const CountTable*, kConfigs> full{};
  std::array<const CountTable*, kConfigs> reduced{};
};

double unit_clamp(double x) { return std::clamp(x, 0.0, 1.0); }

// Linear-inversion values of every companion metric, in a fixed order:
// fidelities (full twice-swapped, then reduced vs configs 1..3), purities.
std::vector<double> linear_metrics(const std::array<CountTable, kConfigs>& full,
                                   const std::array<CountTable, kConfigs>& reduced) {
  auto invert = [](const CountTable& t) {
    return linear_inversion(t, record_projectors(t), /*clip=*/true);
  };
  DensityMatrix full_original = invert(full[0]);
  DensityMatrix full_twice = invert(full[3]);
  std::vector<DensityMatrix> rho;
  for (const auto& t : reduced) rho.push_back(invert(t));

  std::vector<double> out;
  out.push_back(unit_clamp(fidelity(full_original, full_twice)));
  for (std::size_t k = 1; k < kConfigs; ++k) out.push_back(unit_clamp(fidelity(rho[0], rho[k])));
  for (std::size_t k = 0; k < kConfigs; ++k) out.push_back(unit_clamp(purity(rho[k])));
  return out;
}

}  // namespace

CompanionMetrics companion_metrics(const RunRecord& record, const CompanionOptions& options) {
  if (options.resamples < 2) {
    fail(ErrorCode::InvalidArgument, "companion bootstrap needs at least 2 resamples");
  }
  std::array<CountTable, kConfigs> full;
  std::array<CountTable, kConfigs> reduced;
  for (std::size_t k = 0; k < kConfigs; ++k) {
    full[k] = need(record.full[k], "full", k);
    reduced[k] = need(record.reduced[k], "reduced", k);
  }

  CompanionMetrics out;
  out.resamples = options.resamples;
  std::vector<std::string> names = {"full:original_vs_twice_swapped"};
  for (std::size_t k = 1; k < kConfigs; ++k) {
    names.push_back("reduced:original_vs_" + std::string(to_string(kAllSwapConfigs[k])));
  }
  for (std::size_t k = 0; k < kConfigs; ++k) {
    names.push_back("reduced:" + std::string(to_string(kAllSwapConfigs[k])));
  }

  std::vector<double> observed = linear_metrics(full, reduced);

  // Welford accumulation over Poisson replicates; replicate r draws from its
  // own generator so the order of tables inside it is all that matters.
  std::vector<double> mean(observed.size(), 0.0);
  std::vector<double> m2(observed.size(), 0.0);
  for (int r = 0; r < options.resamples; ++r) {
    std::mt19937_64 rng(mix_seed(options.seed, static_cast<std::uint64_t>(r)));
    std::array<CountTable, kConfigs> f;
    std::array<CountTable, kConfigs> d;
    for (std::size_t k = 0; k < kConfigs; ++k) f[k] = poisson_resample(full[k], rng);
    for (std::size_t k = 0; k < kConfigs; ++k) d[k] = poisson_resample(reduced[k], rng);
    auto v = linear_metrics(f, d);
    for (std::size_t i = 0; i < v.size(); ++i) {
      double delta = v[i] - mean[i];
      mean[i] += delta / (r + 1);
      m2[i] += delta * (v[i] - mean[i]);
    }
  }

  std::vector<std::optional<double>> mle(observed.size());
  if (options.mle) {
    auto solve = [&](const CountTable& t, const std::string& name) {
      DensityMatrix rho = DensityMatrix::maximally_mixed(record_space(t.provenance));
      try {
        rho = mle_reconstruct(t, record_projectors(t), options.reconstruction).state;
      } catch (const ConvergenceFailure& e) {
        rho = e.best().state;
        out.unconverged.push_back(name);
      }
      out.states.emplace_back(name, rho);
      return rho;
    };
    DensityMatrix full_original = solve(full[0], "full_original_mle");
    DensityMatrix full_twice = solve(full[3], "full_twice_swapped_mle");
    std::vector<DensityMatrix> rho;
    for (std::size_t k = 0; k < kConfigs; ++k) {
      rho.push_back(solve(reduced[k], "reduced_" +
                                          std::string(to_string(kAllSwapConfigs[k])) + "_mle"));
    }
    mle[0] = unit_clamp(fidelity(full_original, full_twice));
    for (std::size_t k = 1; k < kConfigs; ++k) mle[k] = unit_clamp(fidelity(rho[0], rho[k]));
    for (std::size_t k = 0; k < kConfigs; ++k) mle[kConfigs + k] = unit_clamp(purity(rho[k]));
  }

  for (std::size_t i = 0; i < observed.size(); ++i) {
    double sigma = options.resamples > 1 ? std::sqrt(m2[i] / (options.resamples - 1)) : 0.0;
    CompanionMetric m{names[i], mle[i], observed[i], sigma};
    (i < kConfigs ? out.fidelities : out.purities).push_back(std::move(m));
  }
  return out;
}

PremiseReport premise_report(const RunRecord& record, const VerdictOptions& verdicts,
                             const std::optional<CompanionOptions>& companion) {
  PremiseReport report;
  report.verdicts = evaluate_premises(record, verdicts);
  if (companion) report.companion = companion_metrics(record, *companion);
  return report;
}

}  // namespace envlab
