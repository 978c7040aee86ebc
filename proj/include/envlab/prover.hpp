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

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "envlab/optics.hpp"

namespace envlab::prover {

using Rational = mpq_class;
using LabelPair = std::pair<std::string, std::string>;

/// One term sqrt(weight) |system>|environment>. Composite system kets built by
/// a second pre-measurement keep their factors, first factor being the
/// original system label.
struct SchmidtTerm {
  std::string system;
  std::string environment;
  Rational weight;
  std::vector<std::string> system_factors;

  bool operator==(const SchmidtTerm&) const = default;
};

/// Bipartite state tracked by squared amplitudes and orthogonal labels.
class RationalSchmidtState {
 public:
  RationalSchmidtState() = default;
  /// Validates weights >= 0 summing to 1, environment labels distinct and,
  /// when `schmidt_form`, system labels distinct too. A fine-grained state
  /// repeats system labels and is built with schmidt_form = false.
  /// Throws InvalidState.
  explicit RationalSchmidtState(std::vector<SchmidtTerm> terms,
                                bool schmidt_form = true);

  /// Terms s_k / ε_k with the given weights. Throws InvalidState.
  static RationalSchmidtState from_weights(const std::vector<Rational>& weights);

  const std::vector<SchmidtTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool schmidt_form() const { return schmidt_form_; }

  /// Least common denominator N of the weights.
  mpz_class common_denominator() const;
  bool equal_amplitudes() const;
  std::vector<std::size_t> null_terms() const;
  std::vector<std::size_t> nonnull_terms() const;

  std::optional<std::size_t> find_system(const std::string& label) const;
  std::optional<std::size_t> find_environment(const std::string& label) const;
  bool has_system_label(const std::string& label) const;
  bool has_environment_label(const std::string& label) const;
  /// First factor of a composite system label (or the label itself).
  bool has_coarse_label(const std::string& label) const;
  /// Distinct system labels in term order.
  std::vector<std::string> system_labels() const;

  RationalSchmidtState with_system_swap(const LabelPair& pair) const;
  RationalSchmidtState with_environment_swap(const LabelPair& pair) const;

  /// Same terms irrespective of order.
  bool same_terms(const RationalSchmidtState& other) const;

 private:
  std::vector<SchmidtTerm> terms_;
  bool schmidt_form_ = true;
};

/// "2/3", "1", "0". Throws ParseError.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

enum class StepKind {
  SwapCounterswap,    // Premise I
  LocalInvisibility,  // Premise II
  CorrelationLink,    // Premise III
  FineGrain,
  AncillaPremeasure,
  MergeNullTerms,
  EquateCounts,
};

enum class Side { System, Environment };
enum class EquateMode { Normalization, Balance, Regroup };
enum class MergeDirection { Merge, Split };

std::string to_string(StepKind kind);
std::string to_string(Side side);
std::string to_string(EquateMode mode);
std::string to_string(MergeDirection direction);

/// P(label | state): probability that an observer with access to the label's
/// factor sees it, for the state with the given id.
struct Symbol {
  std::string label;
  std::string state;
  bool operator==(const Symbol&) const = default;
};

enum class ClaimKind {
  Equal,  // target = parts[0]
  Sum,    // target = sum(parts)
  Total,  // sum(parts) = value
  Value,  // target = value
};

struct Claim {
  ClaimKind kind = ClaimKind::Equal;
  Symbol target;
  std::vector<Symbol> parts;
  Rational value;
};

/// Re-expansion of one source term into an equal-weight block:
/// |env> = m^-1/2 sum_j |fine_j>, where the fine kets are the discrete Fourier
/// basis of an m-dimensional extension of the environment.
struct FineGrainBlock {
  std::string system;
  std::string environment;
  long multiplicity = 0;
  std::vector<std::string> fine_labels;
};

/// A single derivation step. Only the fields relevant to `kind` are used.
struct ProofStep {
  StepKind kind = StepKind::EquateCounts;
  /// Premise or construction the step rests on.
  std::string justification;
  std::string note;
  std::string state;
  std::string result;
  /// SwapCounterswap: the system-swapped state between state and result.
  std::string intermediate;
  LabelPair system_swap;
  LabelPair environment_swap;
  /// LocalInvisibility: which side the operation touched, and either a label
  /// swap or the index of an AncillaPremeasure step.
  Side acted_side = Side::System;
  std::optional<LabelPair> label_swap;
  std::optional<std::size_t> ancilla_step;
  /// CorrelationLink: (system label, environment label) pairs.
  std::vector<LabelPair> links;
  std::vector<FineGrainBlock> blocks;
  /// MergeNullTerms: the two merged system labels (Merge) and the new term.
  MergeDirection direction = MergeDirection::Merge;
  LabelPair merged;
  std::string new_system;
  std::string new_environment;
  EquateMode mode = EquateMode::Normalization;
  /// Balance: the Merge step relating state and result.
  std::optional<std::size_t> merge_step;
  std::vector<Claim> claims;
};

struct ProofChain {
  std::string root;
  std::map<std::string, RationalSchmidtState> states;
  std::vector<ProofStep> steps;
  /// Probability per root system label, in term order.
  std::vector<std::pair<std::string, Rational>> conclusion;
  /// Credo items taken as given rather than executed.
  std::vector<std::string> assumptions;

  const RationalSchmidtState& state(const std::string& id) const;
};

struct VerificationReport {
  /// Every step is licensed and the constraints are consistent.
  bool steps_valid = false;
  /// steps_valid, and the conclusion is derived and sums to 1.
  bool accepted = false;
  std::string reason;
  /// Index of the offending step, when a step was rejected.
  std::optional<std::size_t> failing_step;
  /// Values derived for the root's system labels.
  std::map<std::string, Rational> derived;
};

/// Re-executes every step in exact arithmetic, checks that each claim is
/// licensed by its step, solves the resulting equalities and linear
/// constraints and compares the conclusion.
VerificationReport verify(const ProofChain& chain);
/// Throws VerificationFailure with the verifier's reason.
void require_verified(const ProofChain& chain);

/// || lift(uE) lift(uS) psi - e^{i phi} psi || <= tol for the best phase.
/// Throws SpaceMismatch.
bool is_envariant(const Ket& psi, const UnitaryOp& u_system,
                  const UnitaryOp& u_environment, double tol);

/// Steps proving P(first) = P(k) for every k, then normalization: each of
/// the n terms gets 1/n. Throws NotEqualAmplitude.
ProofChain equiprobability_chain(const RationalSchmidtState& psi);

struct FineGrainResult {
  /// The equal-weight state after the ancilla pre-measurement.
  RationalSchmidtState state;
  /// Root, FineGrain, AncillaPremeasure and the invisibility step tying the
  /// original system labels to the new state.
  ProofChain prefix;
  std::string state_id;
};

/// Every term of weight m/N becomes m terms of weight 1/N. Null terms are
/// carried as single zero-weight terms.
FineGrainResult fine_grain(const RationalSchmidtState& psi);

/// Full derivation: null elimination (if needed), then either the
/// equal-amplitude chain or fine-graining followed by the chain and
/// regrouping. Conclusion: each system label gets its weight.
ProofChain derive_born_probabilities(const RationalSchmidtState& psi);

/// Derivation in which the null-weight labels are shown to have probability
/// exactly 0 by the merge-and-count argument. Throws NothingToEliminate.
ProofChain eliminate_null_terms(const RationalSchmidtState& psi);

/// (1/d) sum_i |s_i>|a_i> for d = system_dim, recorded into the first
/// system_dim ancilla kets. Throws InvalidArgument for dims < 2 or an
/// ancilla smaller than the system.
RationalSchmidtState premeasurement_state(std::size_t system_dim,
                                          std::size_t ancilla_dim);

/// The CorrelationLink step on premeasurement_state(...) (state id "psi"):
/// one link per system label, tagged as subsuming the eigenvalue-eigenstate
/// link.
ProofStep check_eel_subsumption(std::size_t system_dim, std::size_t ancilla_dim);

/// Conditional probability table implied by a CorrelationLink step: each
/// linked environment label fixes its system label with probability 1.
std::map<LabelPair, Rational> link_table(const ProofStep& step);

inline constexpr int kChainSchemaVersion = 1;

nlohmann::json chain_to_json(const ProofChain& chain);
/// Parses and re-verifies. Throws ParseError / VerificationFailure.
ProofChain chain_from_json(const nlohmann::json& j);

/// Human-readable rendering.
std::string pretty_print(const ProofChain& chain);

}  // namespace envlab::prover
