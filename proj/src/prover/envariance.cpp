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

#include "envlab/error.hpp"
#include "envlab/prover.hpp"

namespace envlab::prover {

bool is_envariant(const Ket& psi, const UnitaryOp& u_system,
                  const UnitaryOp& u_environment, double tol) {
  Ket moved = apply(lift(u_environment, psi.space()),
                    apply(lift(u_system, psi.space()), psi));
  // Best phase: e^{i phi} = <psi|moved> / |<psi|moved>|.
  Complex overlap = psi.inner(moved);
  Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  double distance = (moved.amplitudes() - phase * psi.amplitudes()).norm();
  return distance <= tol;
}

RationalSchmidtState premeasurement_state(std::size_t system_dim, std::size_t ancilla_dim) {
  if (system_dim < 2 || ancilla_dim < 2) {
    fail(ErrorCode::InvalidArgument, "pre-measurement dimensions must be at least 2");
  }
  if (ancilla_dim < system_dim) {
    fail(ErrorCode::InvalidArgument, "ancilla cannot record every system state");
  }
  std::vector<SchmidtTerm> terms;
  Rational w(1, static_cast<unsigned long>(system_dim));
  for (std::size_t i = 1; i <= system_dim; ++i) {
    terms.push_back({"s_" + std::to_string(i), "a_" + std::to_string(i), w, {}});
  }
  return RationalSchmidtState(std::move(terms));
}

ProofStep check_eel_subsumption(std::size_t system_dim, std::size_t ancilla_dim) {
  auto psi = premeasurement_state(system_dim, ancilla_dim);
  ProofStep step;
  step.kind = StepKind::CorrelationLink;
  step.justification = "Premise III";
  step.note = "eel-subsumption: the ancilla record fixes the system outcome";
  step.state = "psi";
  for (const auto& t : psi.terms()) {
    step.links.emplace_back(t.system, t.environment);
    Claim c;
    c.kind = ClaimKind::Equal;
    c.target = {t.system, "psi"};
    c.parts = {{t.environment, "psi"}};
    step.claims.push_back(std::move(c));
  }
  return step;
}

std::map<LabelPair, Rational> link_table(const ProofStep& step) {
  if (step.kind != StepKind::CorrelationLink) {
    fail(ErrorCode::InvalidArgument, "link tables come from correlation links");
  }
  std::map<LabelPair, Rational> table;
  for (const auto& [sys, env] : step.links) {
    for (const auto& [other, _] : step.links) {
      table[{other, env}] = other == sys ? 1 : 0;
    }
  }
  return table;
}

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::SwapCounterswap: return "SwapCounterswap";
    case StepKind::LocalInvisibility: return "LocalInvisibility";
    case StepKind::CorrelationLink: return "CorrelationLink";
    case StepKind::FineGrain: return "FineGrain";
    case StepKind::AncillaPremeasure: return "AncillaPremeasure";
    case StepKind::MergeNullTerms: return "MergeNullTerms";
    case StepKind::EquateCounts: return "EquateCounts";
  }
  return "?";
}

std::string to_string(Side side) {
  return side == Side::System ? "system" : "environment";
}

std::string to_string(EquateMode mode) {
  switch (mode) {
    case EquateMode::Normalization: return "normalization";
    case EquateMode::Balance: return "balance";
    case EquateMode::Regroup: return "regroup";
  }
  return "?";
}

std::string to_string(MergeDirection direction) {
  return direction == MergeDirection::Merge ? "merge" : "split";
}

}  // namespace envlab::prover
