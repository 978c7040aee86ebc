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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace envlab {

/// One tensor factor: an id plus its ordered orthonormal basis labels.
struct Subsystem {
  std::string id;
  std::vector<std::string> labels;

  std::size_t dim() const { return labels.size(); }
  /// Throws UnknownBasisLabel.
  std::size_t index_of(std::string_view label) const;
  bool has_label(std::string_view label) const;

  bool operator==(const Subsystem&) const = default;
};

/// Circular polarization basis {R, L}.
Subsystem sam_subsystem(std::string id = "sam");
/// OAM ladder restricted to {+1, -1}.
Subsystem oam_subsystem(std::string id = "oam");
/// OAM ladder over [lo, hi], labels ordered by increasing charge.
Subsystem oam_window(std::string id, int lo, int hi);
std::string oam_label(int charge);
/// Parses "+1", "-2", "0". Throws ParseError.
int parse_oam_label(std::string_view label);

/// Ordered list of subsystems. Basis index is the lexicographic product with
/// the first subsystem most significant.
class SpaceDescriptor {
 public:
  SpaceDescriptor() = default;
  /// Validates ids unique, labels unique, every dimension >= 2.
  explicit SpaceDescriptor(std::vector<Subsystem> subsystems);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  std::size_t dimension() const { return dimension_; }

  bool contains(std::string_view id) const;
  /// Position of a subsystem in the ordering. Throws UnknownSubsystem.
  std::size_t position(std::string_view id) const;
  const Subsystem& subsystem(std::string_view id) const;
  std::vector<std::string> ids() const;

  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t index(std::span<const std::size_t> digits) const;
  /// Basis index of the product ket with one label per subsystem, in order.
  std::size_t basis_index(const std::vector<std::string>& labels) const;
  std::string basis_name(std::size_t index) const;

  /// Concatenation; throws DuplicateSubsystem on shared ids.
  SpaceDescriptor concat(const SpaceDescriptor& other) const;
  /// Subspace keeping the listed ids in this descriptor's order.
  SpaceDescriptor restrict_to(const std::vector<std::string>& ids) const;
  SpaceDescriptor without(std::string_view id) const;

  bool operator==(const SpaceDescriptor& other) const {
    return subsystems_ == other.subsystems_;
  }

 private:
  std::vector<Subsystem> subsystems_;
  std::size_t dimension_ = 1;
};

/// Split of a space's subsystems into two nonempty complementary sets.
struct BipartiteSplit {
  std::vector<std::string> left;
  std::vector<std::string> right;

  /// Left side given; right is the complement in `space`. Throws InvalidSplit.
  static BipartiteSplit of(const SpaceDescriptor& space,
                           std::vector<std::string> left);
  void validate(const SpaceDescriptor& space) const;
};

}  // namespace envlab
