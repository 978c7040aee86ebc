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
#include <string_view>
#include <unordered_map>

#include "envlab/error.hpp"
#include "envlab/verdicts.hpp"

namespace envlab {
namespace {

// For each key of `a`, the position of the same key in `b`. Throws
// IncomparableRecords unless the key sets are equal.
std::vector<std::size_t> align(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::IncomparableRecords, "records have different projector counts");
  }
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t j = 0; j < b.size(); ++j) position.emplace(b[j], j);
  std::vector<std::size_t> out;
  out.reserve(a.size());
  for (const auto& key : a) {
    auto it = position.find(key);
    if (it == position.end()) {
      fail(ErrorCode::IncomparableRecords, "projector '" + key + "' has no counterpart");
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::string> keys(const ProbabilityTable& p) {
  std::vector<std::string> out;
  for (const auto& e : p.entries) out.push_back(e.projector_id);
  return out;
}

double coefficient(const std::vector<double>& a, const std::vector<double>& b,
                   const std::vector<std::size_t>& match) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::sqrt(a[i] * b[match[i]]);
  return s;
}

// One parametric replicate of a table's frequencies, normalized by the
// observed total.
void redraw(const CountTable& t, double total, std::mt19937_64& rng,
            std::vector<double>& out) {
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    auto observed = t.entries[i].count;
    std::int64_t n = observed;
    if (t.shot_noise && observed > 0) {
      std::poisson_distribution<std::int64_t> poisson(static_cast<double>(observed));
      n = poisson(rng);
    }
    out[i] = static_cast<double>(n) / total;
  }
}

}  // namespace

double bhattacharyya(const ProbabilityTable& p1, const ProbabilityTable& p2) {
  auto match = align(keys(p1), keys(p2));
  double s = 0.0;
  for (std::size_t i = 0; i < p1.entries.size(); ++i) {
    s += std::sqrt(p1.entries[i].value * p2.entries[match[i]].value);
  }
  return s;
}

Estimate bhattacharyya_with_uncertainty(const CountTable& c1, const CountTable& c2,
                                        int resamples, std::uint64_t seed) {
  if (resamples < 100) {
    fail(ErrorCode::InvalidArgument, "bootstrap needs at least 100 resamples");
  }
  auto match = align(c1.ids(), c2.ids());
  Estimate out;
  out.value = bhattacharyya(frequencies(c1), frequencies(c2));
  if (!c1.shot_noise && !c2.shot_noise) return out;

  const auto t1 = static_cast<double>(c1.grand_total());
  const auto t2 = static_cast<double>(c2.grand_total());
  std::vector<double> f1(c1.entries.size());
  std::vector<double> f2(c2.entries.size());
  double mean = 0.0;
  double m2 = 0.0;
  for (int r = 0; r < resamples; ++r) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    redraw(c1, t1, rng, f1);
    redraw(c2, t2, rng, f2);
    double b = coefficient(f1, f2, match);
    // Welford update.
    double delta = b - mean;
    mean += delta / (r + 1);
    m2 += delta * (b - mean);
  }
  out.sigma = std::sqrt(m2 / (resamples - 1));
  return out;
}

}  // namespace envlab
