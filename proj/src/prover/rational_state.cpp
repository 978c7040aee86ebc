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
#include <set>

#include "envlab/error.hpp"
#include "envlab/prover.hpp"

namespace envlab::prover {

RationalSchmidtState::RationalSchmidtState(std::vector<SchmidtTerm> terms,
                                           bool schmidt_form)
    : terms_(std::move(terms)), schmidt_form_(schmidt_form) {
  if (terms_.empty()) fail(ErrorCode::InvalidState, "state has no terms");
  Rational total = 0;
  std::set<std::string> systems;
  std::set<std::string> environments;
  for (const auto& t : terms_) {
    if (t.weight < 0) {
      fail(ErrorCode::InvalidState, "negative weight on " + t.system);
    }
    total += t.weight;
    if (t.system.empty() || t.environment.empty()) {
      fail(ErrorCode::InvalidState, "empty label");
    }
    if (!environments.insert(t.environment).second) {
      fail(ErrorCode::InvalidState, "environment label " + t.environment + " repeated");
    }
    if (schmidt_form_ && !systems.insert(t.system).second) {
      fail(ErrorCode::InvalidState, "system label " + t.system + " repeated");
    }
  }
  if (total != 1) {
    fail(ErrorCode::InvalidState, "weights sum to " + to_string(total) + ", not 1");
  }
}

RationalSchmidtState RationalSchmidtState::from_weights(
    const std::vector<Rational>& weights) {
  std::vector<SchmidtTerm> terms;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    terms.push_back({"s_" + std::to_string(k), "ε_" + std::to_string(k), weights[k], {}});
  }
  return RationalSchmidtState(std::move(terms));
}

mpz_class RationalSchmidtState::common_denominator() const {
  mpz_class n = 1;
  for (const auto& t : terms_) {
    mpz_class d = t.weight.get_den();
    mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  }
  return n;
}

bool RationalSchmidtState::equal_amplitudes() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const SchmidtTerm& t) { return t.weight == terms_[0].weight; });
}

std::vector<std::size_t> RationalSchmidtState::null_terms() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].weight == 0) out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> RationalSchmidtState::nonnull_terms() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].weight != 0) out.push_back(k);
  }
  return out;
}

std::optional<std::size_t> RationalSchmidtState::find_system(
    const std::string& label) const {
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].system == label) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> RationalSchmidtState::find_environment(
    const std::string& label) const {
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].environment == label) return k;
  }
  return std::nullopt;
}

bool RationalSchmidtState::has_system_label(const std::string& label) const {
  return find_system(label).has_value();
}

bool RationalSchmidtState::has_environment_label(const std::string& label) const {
  return find_environment(label).has_value();
}

bool RationalSchmidtState::has_coarse_label(const std::string& label) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const SchmidtTerm& t) {
    return !t.system_factors.empty() && t.system_factors.front() == label;
  });
}

std::vector<std::string> RationalSchmidtState::system_labels() const {
  std::vector<std::string> out;
  for (const auto& t : terms_) {
    if (std::find(out.begin(), out.end(), t.system) == out.end()) {
      out.push_back(t.system);
    }
  }
  return out;
}

namespace {

void swap_label(std::string& label, const LabelPair& pair) {
  if (label == pair.first) {
    label = pair.second;
  } else if (label == pair.second) {
    label = pair.first;
  }
}

}  // namespace

RationalSchmidtState RationalSchmidtState::with_system_swap(const LabelPair& pair) const {
  // A swap of system kets moves a composite ket as a whole, factors included.
  std::vector<std::string> first_factors;
  std::vector<std::string> second_factors;
  for (const auto& t : terms_) {
    if (t.system == pair.first) first_factors = t.system_factors;
    if (t.system == pair.second) second_factors = t.system_factors;
  }
  RationalSchmidtState out = *this;
  for (auto& t : out.terms_) {
    if (t.system == pair.first) {
      t.system = pair.second;
      t.system_factors = second_factors;
    } else if (t.system == pair.second) {
      t.system = pair.first;
      t.system_factors = first_factors;
    }
  }
  return out;
}

RationalSchmidtState RationalSchmidtState::with_environment_swap(
    const LabelPair& pair) const {
  RationalSchmidtState out = *this;
  for (auto& t : out.terms_) swap_label(t.environment, pair);
  return out;
}

bool RationalSchmidtState::same_terms(const RationalSchmidtState& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  // Environment labels are unique, so they key the comparison.
  std::vector<const SchmidtTerm*> a;
  std::vector<const SchmidtTerm*> b;
  for (const auto& t : terms_) a.push_back(&t);
  for (const auto& t : other.terms_) b.push_back(&t);
  auto by_env = [](const SchmidtTerm* x, const SchmidtTerm* y) {
    return x->environment < y->environment;
  };
  std::sort(a.begin(), a.end(), by_env);
  std::sort(b.begin(), b.end(), by_env);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(*a[k] == *b[k])) return false;
  }
  return true;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&]() {
    fail(ErrorCode::ParseError, "not a rational: '" + text + "'");
  };
  if (text.empty()) bad();
  auto slash = text.find('/');
  auto digits_only = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!digits_only(num) || !digits_only(den)) bad();
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) bad();
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace envlab::prover
