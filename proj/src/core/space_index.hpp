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

#include <utility>
#include <vector>

#include "envlab/error.hpp"
#include "envlab/space.hpp"

namespace envlab::detail {

// For a permutation `order` of the space's ids, returns the reordered space and
// the map new-index -> old-index.
inline std::pair<SpaceDescriptor, std::vector<std::size_t>> reorder_map(
    const SpaceDescriptor& space, const std::vector<std::string>& order) {
  if (order.size() != space.size()) {
    fail(ErrorCode::SpaceMismatch, "reordering must name every subsystem");
  }
  std::vector<Subsystem> subs;
  std::vector<std::size_t> pos;
  for (const auto& id : order) {
    pos.push_back(space.position(id));
    subs.push_back(space.subsystems()[pos.back()]);
  }
  SpaceDescriptor target(std::move(subs));
  std::vector<std::size_t> map(space.dimension());
  std::vector<std::size_t> old_digits(space.size());
  for (std::size_t i = 0; i < target.dimension(); ++i) {
    auto d = target.digits(i);
    for (std::size_t k = 0; k < d.size(); ++k) old_digits[pos[k]] = d[k];
    map[i] = space.index(old_digits);
  }
  return {std::move(target), std::move(map)};
}

}  // namespace envlab::detail
