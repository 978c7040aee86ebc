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

#include <cmath>
#include <random>

#include "envlab/error.hpp"
#include "envlab/records.hpp"

namespace envlab {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CountTable sample_counts(const ProbabilityTable& probs,
                         std::int64_t shots_per_setting,
                         const NoiseModel& noise, std::uint64_t seed) {
  if (shots_per_setting <= 0) {
    fail(ErrorCode::InvalidArgument, "shots per setting must be positive");
  }
  noise.validate();
  CountTable out;
  out.seed = seed;
  out.provenance = probs.provenance;
  out.shot_noise = noise.shot_noise;
  out.total_shots =
      shots_per_setting * static_cast<std::int64_t>(settings_per_record(
                              probs.provenance.mode, probs.entries.size()));
  out.entries.reserve(probs.entries.size());
  const auto shots = static_cast<double>(shots_per_setting);
  for (std::size_t i = 0; i < probs.entries.size(); ++i) {
    const auto& e = probs.entries[i];
    double mean = noise.efficiency * shots * e.value + noise.background_rate;
    std::int64_t n = 0;
    if (noise.shot_noise) {
      if (mean > 0.0) {
        std::mt19937_64 rng(mix_seed(seed, i));
        std::poisson_distribution<std::int64_t> poisson(mean);
        n = poisson(rng);
      }
    } else {
      n = std::llround(mean);
    }
    out.entries.push_back({e.projector_id, n});
  }
  return out;
}

}  // namespace envlab
