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

#include "envlab/space.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "envlab/error.hpp"

namespace envlab {

std::size_t Subsystem::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  fail(ErrorCode::UnknownBasisLabel,
       "label '" + std::string(label) + "' not in subsystem '" + id + "'");
}

bool Subsystem::has_label(std::string_view label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

Subsystem sam_subsystem(std::string id) { return {std::move(id), {"R", "L"}}; }

Subsystem oam_subsystem(std::string id) {
  return {std::move(id), {"+1", "-1"}};
}

Subsystem oam_window(std::string id, int lo, int hi) {
  if (hi <= lo) fail(ErrorCode::InvalidSpace, "empty OAM window");
  Subsystem s{std::move(id), {}};
  for (int l = lo; l <= hi; ++l) s.labels.push_back(oam_label(l));
  return s;
}

std::string oam_label(int charge) {
  if (charge > 0) return "+" + std::to_string(charge);
  return std::to_string(charge);
}

int parse_oam_label(std::string_view label) {
  std::string_view digits = label;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() ||
      digits.empty()) {
    fail(ErrorCode::ParseError, "not an OAM label: '" + std::string(label) + "'");
  }
  return value;
}

SpaceDescriptor::SpaceDescriptor(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  std::set<std::string> ids;
  for (const auto& s : subsystems_) {
    if (!ids.insert(s.id).second) {
      fail(ErrorCode::DuplicateSubsystem, "subsystem id '" + s.id + "' repeated");
    }
    if (s.dim() < 2) {
      fail(ErrorCode::InvalidSpace,
           "subsystem '" + s.id + "' has dimension below 2");
    }
    std::set<std::string> labels(s.labels.begin(), s.labels.end());
    if (labels.size() != s.labels.size()) {
      fail(ErrorCode::InvalidSpace, "duplicate basis label in '" + s.id + "'");
    }
    dimension_ *= s.dim();
  }
}

bool SpaceDescriptor::contains(std::string_view id) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem& s) { return s.id == id; });
}

std::size_t SpaceDescriptor::position(std::string_view id) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].id == id) return i;
  }
  fail(ErrorCode::UnknownSubsystem, "no subsystem '" + std::string(id) + "'");
}

const Subsystem& SpaceDescriptor::subsystem(std::string_view id) const {
  return subsystems_[position(id)];
}

std::vector<std::string> SpaceDescriptor::ids() const {
  std::vector<std::string> out;
  out.reserve(subsystems_.size());
  for (const auto& s : subsystems_) out.push_back(s.id);
  return out;
}

std::vector<std::size_t> SpaceDescriptor::digits(std::size_t index) const {
  std::vector<std::size_t> d(subsystems_.size());
  for (std::size_t k = subsystems_.size(); k-- > 0;) {
    d[k] = index % subsystems_[k].dim();
    index /= subsystems_[k].dim();
  }
  return d;
}

std::size_t SpaceDescriptor::index(std::span<const std::size_t> digits) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < subsystems_.size(); ++k) {
    idx = idx * subsystems_[k].dim() + digits[k];
  }
  return idx;
}

std::size_t SpaceDescriptor::basis_index(
    const std::vector<std::string>& labels) const {
  if (labels.size() != subsystems_.size()) {
    fail(ErrorCode::SpaceMismatch, "wrong number of basis labels");
  }
  std::vector<std::size_t> d(labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k) {
    d[k] = subsystems_[k].index_of(labels[k]);
  }
  return index(d);
}

std::string SpaceDescriptor::basis_name(std::size_t index) const {
  auto d = digits(index);
  std::string out;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (k) out += ",";
    out += subsystems_[k].labels[d[k]];
  }
  return out;
}

SpaceDescriptor SpaceDescriptor::concat(const SpaceDescriptor& other) const {
  auto all = subsystems_;
  all.insert(all.end(), other.subsystems_.begin(), other.subsystems_.end());
  return SpaceDescriptor(std::move(all));
}

SpaceDescriptor SpaceDescriptor::restrict_to(
    const std::vector<std::string>& ids) const {
  std::vector<Subsystem> kept;
  for (const auto& s : subsystems_) {
    if (std::find(ids.begin(), ids.end(), s.id) != ids.end()) kept.push_back(s);
  }
  if (kept.size() != ids.size()) {
    fail(ErrorCode::UnknownSubsystem, "restriction names an absent subsystem");
  }
  return SpaceDescriptor(std::move(kept));
}

SpaceDescriptor SpaceDescriptor::without(std::string_view id) const {
  position(id);
  std::vector<Subsystem> kept;
  for (const auto& s : subsystems_) {
    if (s.id != id) kept.push_back(s);
  }
  return SpaceDescriptor(std::move(kept));
}

BipartiteSplit BipartiteSplit::of(const SpaceDescriptor& space,
                                  std::vector<std::string> left) {
  BipartiteSplit split;
  split.left = std::move(left);
  for (const auto& s : space.subsystems()) {
    if (std::find(split.left.begin(), split.left.end(), s.id) ==
        split.left.end()) {
      split.right.push_back(s.id);
    }
  }
  split.validate(space);
  return split;
}

void BipartiteSplit::validate(const SpaceDescriptor& space) const {
  if (left.empty() || right.empty()) {
    fail(ErrorCode::InvalidSplit, "both sides of a split must be nonempty");
  }
  std::set<std::string> seen;
  for (const auto& id : left) {
    if (!space.contains(id)) fail(ErrorCode::InvalidSplit, "unknown id " + id);
    if (!seen.insert(id).second) fail(ErrorCode::InvalidSplit, "repeated " + id);
  }
  for (const auto& id : right) {
    if (!space.contains(id)) fail(ErrorCode::InvalidSplit, "unknown id " + id);
    if (!seen.insert(id).second) {
      fail(ErrorCode::InvalidSplit, "sides overlap at " + id);
    }
  }
  if (seen.size() != space.size()) {
    fail(ErrorCode::InvalidSplit, "split does not cover every subsystem");
  }
}

}  // namespace envlab
