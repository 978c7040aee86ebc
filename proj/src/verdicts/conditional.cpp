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

#include "envlab/error.hpp"
#include "envlab/verdicts.hpp"

namespace envlab {
namespace {

constexpr std::string_view kJoin = "⊗";

std::pair<std::string, std::string> split_id(const std::string& id) {
  auto pos = id.find(kJoin);
  if (pos == std::string::npos) {
    fail(ErrorCode::ParseError, "projector id '" + id + "' is not a product label");
  }
  return {id.substr(0, pos), id.substr(pos + kJoin.size())};
}

void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace

const ConditionalCell& ConditionalTable::cell(const std::string& outcome,
                                              const std::string& condition) const {
  for (const auto& c : cells) {
    if (c.outcome == outcome && c.condition == condition) return c;
  }
  fail(ErrorCode::MissingConfiguration,
       "no conditional cell for " + outcome + " | " + condition);
}

ConditionalTable conditional_frequencies(const CountTable& counts) {
  ConditionalTable out;
  for (const auto& e : counts.entries) {
    auto [o, c] = split_id(e.projector_id);
    push_unique(out.outcomes, o);
    push_unique(out.conditions, c);
  }
  if (out.outcomes.size() < 2 || out.conditions.size() < 2) {
    fail(ErrorCode::MissingConfiguration, "conditional record needs a 2x2 grid");
  }
  for (const auto& c : out.conditions) {
    std::int64_t total = 0;
    for (const auto& o : out.outcomes) {
      total += counts.count(std::string(o).append(kJoin).append(c));
    }
    if (total <= 0) {
      fail(ErrorCode::EmptyCounts, "no events with conditioning label " + c);
    }
    for (const auto& o : out.outcomes) {
      auto n = counts.count(std::string(o).append(kJoin).append(c));
      double p = static_cast<double>(n) / static_cast<double>(total);
      double sigma =
          counts.shot_noise ? std::sqrt(p * (1.0 - p) / static_cast<double>(total))
                            : 0.0;
      out.cells.push_back({o, c, {p, sigma}, total});
    }
  }
  return out;
}

}  // namespace envlab
