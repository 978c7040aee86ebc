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

#include "envlab/error.hpp"
#include "envlab/prover.hpp"

namespace envlab::prover {
namespace {

const char* const kIdentityAxiom =
    "axiom: mathematically identical states are physically equivalent";

Claim equal(Symbol a, Symbol b) {
  Claim c;
  c.kind = ClaimKind::Equal;
  c.target = std::move(a);
  c.parts = {std::move(b)};
  return c;
}

std::string fresh_label(const RationalSchmidtState& s, const std::string& stem,
                        bool system_side) {
  for (int k = 1;; ++k) {
    std::string label = stem + std::to_string(k);
    bool taken = system_side ? s.has_system_label(label) || s.has_coarse_label(label)
                             : s.has_environment_label(label);
    if (!taken) return label;
  }
}

class Builder {
 public:
  explicit Builder(const RationalSchmidtState& root) {
    chain_.root = "psi";
    chain_.states.emplace("psi", root);
    chain_.assumptions = {
        "credo (iv): an immediately repeated measurement yields the same outcome",
    };
  }

  const RationalSchmidtState& state(const std::string& id) const {
    return chain_.states.at(id);
  }

  std::string add(std::string id, RationalSchmidtState s) {
    std::string unique = id;
    for (int k = 2; chain_.states.count(unique) != 0; ++k) {
      unique = id + "#" + std::to_string(k);
    }
    chain_.states.emplace(unique, std::move(s));
    return unique;
  }

  std::size_t emit(ProofStep step) {
    chain_.steps.push_back(std::move(step));
    return chain_.steps.size() - 1;
  }

  // Steps 1-5 for each pair (first, k): P(s_first | x) = P(s_k | x).
  void equiprobable(const std::string& x, const std::vector<std::size_t>& terms) {
    if (terms.size() < 2) return;
    const auto& first = state(x).terms()[terms[0]];
    for (std::size_t n = 1; n < terms.size(); ++n) {
      const auto& other = state(x).terms()[terms[n]];
      LabelPair sys{first.system, other.system};
      LabelPair env{first.environment, other.environment};
      const std::string s_a = sys.first;
      const std::string s_b = sys.second;
      const std::string e_b = env.second;

      std::string xs = add(x + "|S(" + s_a + "," + s_b + ")", state(x).with_system_swap(sys));
      std::string xse = add(xs + "|E(" + env.first + "," + e_b + ")",
                            state(xs).with_environment_swap(env));

      ProofStep swap;
      swap.kind = StepKind::SwapCounterswap;
      swap.justification = "Premise I";
      swap.note = kIdentityAxiom;
      swap.state = x;
      swap.intermediate = xs;
      swap.result = xse;
      swap.system_swap = sys;
      swap.environment_swap = env;
      swap.claims = {equal({s_a, x}, {s_a, xse})};
      emit(std::move(swap));

      ProofStep env_invisible;
      env_invisible.kind = StepKind::LocalInvisibility;
      env_invisible.justification = "Premise II";
      env_invisible.note = "environment counterswap leaves system statistics unchanged";
      env_invisible.state = xs;
      env_invisible.result = xse;
      env_invisible.acted_side = Side::Environment;
      env_invisible.label_swap = env;
      env_invisible.claims = {equal({s_a, xse}, {s_a, xs})};
      emit(std::move(env_invisible));

      ProofStep link_swapped;
      link_swapped.kind = StepKind::CorrelationLink;
      link_swapped.justification = "Premise III";
      link_swapped.state = xs;
      link_swapped.links = {{s_a, e_b}};
      link_swapped.claims = {equal({s_a, xs}, {e_b, xs})};
      emit(std::move(link_swapped));

      ProofStep sys_invisible;
      sys_invisible.kind = StepKind::LocalInvisibility;
      sys_invisible.justification = "Premise II";
      sys_invisible.note = "system swap leaves environment statistics unchanged";
      sys_invisible.state = x;
      sys_invisible.result = xs;
      sys_invisible.acted_side = Side::System;
      sys_invisible.label_swap = sys;
      sys_invisible.claims = {equal({e_b, xs}, {e_b, x})};
      emit(std::move(sys_invisible));

      ProofStep link;
      link.kind = StepKind::CorrelationLink;
      link.justification = "Premise III";
      link.state = x;
      link.links = {{s_b, e_b}};
      link.claims = {equal({e_b, x}, {s_b, x})};
      emit(std::move(link));
    }
  }

  void normalize(const std::string& x) {
    ProofStep step;
    step.kind = StepKind::EquateCounts;
    step.mode = EquateMode::Normalization;
    step.justification = "probability axiom";
    step.note = "outcome probabilities of one state sum to 1";
    step.state = x;
    Claim c;
    c.kind = ClaimKind::Total;
    for (const auto& label : state(x).system_labels()) c.parts.push_back({label, x});
    c.value = 1;
    step.claims = {std::move(c)};
    emit(std::move(step));
  }

  void regroup(const std::string& x, const std::string& coarse) {
    ProofStep step;
    step.kind = StepKind::EquateCounts;
    step.mode = EquateMode::Regroup;
    step.justification = "probability axiom";
    step.note = "a coarse outcome is the union of its composite outcomes";
    step.state = x;
    Claim c;
    c.kind = ClaimKind::Sum;
    c.target = {coarse, x};
    for (const auto& t : state(x).terms()) {
      if (!t.system_factors.empty() && t.system_factors.front() == coarse) {
        c.parts.push_back({t.system, x});
      }
    }
    step.claims = {std::move(c)};
    emit(std::move(step));
  }

  std::vector<std::size_t> nulls_of(const std::string& x) const {
    return state(x).null_terms();
  }

  // Pads to at least three null terms, then merges pairwise down to one,
  // equating counts at each stage with at least two remaining terms.
  std::string eliminate_nulls(const std::string& root) {
    std::string cur = root;
    int pads = 0;
    while (nulls_of(cur).size() < 3) {
      const auto& s = state(cur);
      std::string sys = fresh_label(s, "n_", true);
      std::string env = fresh_label(s, "ν_", false);
      auto terms = s.terms();
      terms.push_back({sys, env, 0, {}});
      std::string next = add(root + "+pad" + std::to_string(++pads),
                             RationalSchmidtState(std::move(terms), s.schmidt_form()));
      ProofStep split;
      split.kind = StepKind::MergeNullTerms;
      split.direction = MergeDirection::Split;
      split.justification = "Premise I";
      split.note = kIdentityAxiom + std::string("; a zero-weight term adds nothing");
      split.state = cur;
      split.result = next;
      split.new_system = sys;
      split.new_environment = env;
      for (const auto& label : s.system_labels()) {
        split.claims.push_back(equal({label, cur}, {label, next}));
      }
      emit(std::move(split));
      cur = next;
    }

    int merges = 0;
    while (nulls_of(cur).size() >= 2) {
      auto nulls = nulls_of(cur);
      equiprobable(cur, nulls);
      const auto& s = state(cur);
      const auto& a = s.terms()[nulls[0]];
      const auto& b = s.terms()[nulls[1]];
      std::string merged_sys = fresh_label(s, "m_", true);
      std::string merged_env = fresh_label(s, "μ_", false);
      std::vector<SchmidtTerm> terms;
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (k == nulls[0]) {
          terms.push_back({merged_sys, merged_env, 0, {}});
        } else if (k != nulls[1]) {
          terms.push_back(s.terms()[k]);
        }
      }
      std::string next = add(root + "+merge" + std::to_string(++merges),
                             RationalSchmidtState(std::move(terms), s.schmidt_form()));

      ProofStep merge;
      merge.kind = StepKind::MergeNullTerms;
      merge.direction = MergeDirection::Merge;
      merge.justification = "Premise I";
      merge.note = kIdentityAxiom + std::string("; 0(|a>|x> + |b>|y>) = 0|a'>|x'>");
      merge.state = cur;
      merge.result = next;
      merge.merged = {a.system, b.system};
      merge.new_system = merged_sys;
      merge.new_environment = merged_env;
      for (const auto& label : s.system_labels()) {
        if (label == a.system || label == b.system) continue;
        merge.claims.push_back(equal({label, cur}, {label, next}));
      }
      Claim sum;
      sum.kind = ClaimKind::Sum;
      sum.target = {merged_sys, next};
      sum.parts = {{a.system, cur}, {b.system, cur}};
      merge.claims.push_back(std::move(sum));
      std::size_t merge_index = emit(std::move(merge));

      auto next_nulls = nulls_of(next);
      if (next_nulls.size() >= 2) {
        equiprobable(next, next_nulls);
        ProofStep balance;
        balance.kind = StepKind::EquateCounts;
        balance.mode = EquateMode::Balance;
        balance.justification = "probability axiom";
        balance.note = "p*" + std::to_string(nulls.size()) + " = p*" +
                       std::to_string(next_nulls.size()) + " forces p = 0";
        balance.state = cur;
        balance.result = next;
        balance.merge_step = merge_index;
        for (auto k : nulls) {
          Claim v;
          v.kind = ClaimKind::Value;
          v.target = {s.terms()[k].system, cur};
          v.value = 0;
          balance.claims.push_back(std::move(v));
        }
        emit(std::move(balance));
      }
      cur = next;
    }
    return cur;
  }

  ProofChain finish(const RationalSchmidtState& root) {
    for (const auto& t : root.terms()) chain_.conclusion.emplace_back(t.system, t.weight);
    return std::move(chain_);
  }

  ProofChain finish_without_conclusion() { return std::move(chain_); }

 private:
  ProofChain chain_;
};

std::string fine_label(const std::string& env, long m, long j) {
  if (m == 1) return env;
  if (m == 2) return env + (j == 0 ? "+" : "-");
  return env + "~" + std::to_string(j);
}

// FineGrain, AncillaPremeasure and invisibility, appended to `b` on `from`.
std::string append_fine_grain(Builder& b, const std::string& from) {
  const auto& psi = b.state(from);
  const mpz_class n = psi.common_denominator();
  const Rational unit(mpz_class(1), n);

  std::vector<FineGrainBlock> blocks;
  std::vector<SchmidtTerm> fine_terms;
  for (const auto& t : psi.terms()) {
    Rational scaled = t.weight * n;
    long m = scaled.get_num().get_si();
    FineGrainBlock block{t.system, t.environment, m, {}};
    if (m == 0) {
      block.fine_labels = {t.environment};
      fine_terms.push_back({t.system, t.environment, 0, {}});
    }
    for (long j = 0; j < m; ++j) {
      block.fine_labels.push_back(fine_label(t.environment, m, j));
      fine_terms.push_back({t.system, block.fine_labels.back(), unit, {}});
    }
    blocks.push_back(std::move(block));
  }
  std::string fg = b.add(from + "~fine", RationalSchmidtState(fine_terms, false));

  ProofStep grain;
  grain.kind = StepKind::FineGrain;
  grain.justification = "construction: fine-graining";
  grain.note = "|ε> = m^-1/2 Σ_j |ε~j> over a Fourier basis of an extended environment";
  grain.state = from;
  grain.result = fg;
  grain.blocks = blocks;
  for (const auto& label : psi.system_labels()) {
    grain.claims.push_back(equal({label, from}, {label, fg}));
  }
  b.emit(std::move(grain));

  std::vector<SchmidtTerm> composite;
  for (const auto& t : fine_terms) {
    composite.push_back({t.system + "·" + t.environment, "e[" + t.environment + "]",
                         t.weight, {t.system, t.environment}});
  }
  std::string primed = b.add(from + "'", RationalSchmidtState(composite));

  ProofStep ancilla;
  ancilla.kind = StepKind::AncillaPremeasure;
  ancilla.justification = "construction: second pre-measurement";
  ancilla.note = "|ε~j>|e_0> -> |ε~j>|e[ε~j]>; system kets absorb the first environment";
  ancilla.state = fg;
  ancilla.result = primed;
  std::size_t ancilla_index = b.emit(std::move(ancilla));

  ProofStep invisible;
  invisible.kind = StepKind::LocalInvisibility;
  invisible.justification = "Premise II";
  invisible.note = "the pre-measurement acts on the environment only";
  invisible.state = fg;
  invisible.result = primed;
  invisible.acted_side = Side::Environment;
  invisible.ancilla_step = ancilla_index;
  for (const auto& label : b.state(fg).system_labels()) {
    invisible.claims.push_back(equal({label, fg}, {label, primed}));
  }
  b.emit(std::move(invisible));
  return primed;
}

ProofChain derive(const RationalSchmidtState& psi) {
  Builder b(psi);
  if (!psi.null_terms().empty()) b.eliminate_nulls("psi");

  auto nonnull = psi.nonnull_terms();
  bool uniform = std::all_of(nonnull.begin(), nonnull.end(), [&](std::size_t k) {
    return psi.terms()[k].weight == psi.terms()[nonnull[0]].weight;
  });
  if (uniform) {
    b.equiprobable("psi", nonnull);
    b.normalize("psi");
    return b.finish(psi);
  }

  std::string primed = append_fine_grain(b, "psi");
  const auto& ps = b.state(primed);
  std::vector<std::size_t> composite_nonnull;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (ps.terms()[k].weight != 0) composite_nonnull.push_back(k);
  }
  for (auto k : psi.null_terms()) b.regroup(primed, psi.terms()[k].system);
  b.equiprobable(primed, composite_nonnull);
  b.normalize(primed);
  for (auto k : nonnull) b.regroup(primed, psi.terms()[k].system);
  return b.finish(psi);
}

}  // namespace

const RationalSchmidtState& ProofChain::state(const std::string& id) const {
  auto it = states.find(id);
  if (it == states.end()) fail(ErrorCode::VerificationFailure, "unknown state id " + id);
  return it->second;
}

ProofChain equiprobability_chain(const RationalSchmidtState& psi) {
  if (!psi.equal_amplitudes()) {
    fail(ErrorCode::NotEqualAmplitude, "amplitudes differ; fine-grain first");
  }
  std::vector<std::size_t> all(psi.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  Builder b(psi);
  b.equiprobable("psi", all);
  b.normalize("psi");
  return b.finish(psi);
}

FineGrainResult fine_grain(const RationalSchmidtState& psi) {
  Builder b(psi);
  std::string primed = append_fine_grain(b, "psi");
  RationalSchmidtState state = b.state(primed);
  return {std::move(state), b.finish_without_conclusion(), primed};
}

ProofChain derive_born_probabilities(const RationalSchmidtState& psi) { return derive(psi); }

ProofChain eliminate_null_terms(const RationalSchmidtState& psi) {
  if (psi.null_terms().empty()) {
    fail(ErrorCode::NothingToEliminate, "state has no zero-weight terms");
  }
  return derive(psi);
}

}  // namespace envlab::prover
