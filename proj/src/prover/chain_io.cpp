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

#include <sstream>

#include "envlab/error.hpp"
#include "envlab/prover.hpp"

namespace envlab::prover {
namespace {

using nlohmann::json;

json symbol_json(const Symbol& s) { return {{"label", s.label}, {"state", s.state}}; }

Symbol symbol_from(const json& j) {
  return {j.at("label").get<std::string>(), j.at("state").get<std::string>()};
}

std::string claim_kind_name(ClaimKind k) {
  switch (k) {
    case ClaimKind::Equal: return "equal";
    case ClaimKind::Sum: return "sum";
    case ClaimKind::Total: return "total";
    case ClaimKind::Value: return "value";
  }
  return "?";
}

template <typename E>
E parse_enum(const std::string& text, std::initializer_list<E> all, const char* what) {
  for (E e : all) {
    if (to_string(e) == text) return e;
  }
  fail(ErrorCode::ParseError, std::string("unknown ") + what + " '" + text + "'");
}

ClaimKind parse_claim_kind(const std::string& text) {
  for (auto k : {ClaimKind::Equal, ClaimKind::Sum, ClaimKind::Total, ClaimKind::Value}) {
    if (claim_kind_name(k) == text) return k;
  }
  fail(ErrorCode::ParseError, "unknown claim kind '" + text + "'");
}

json claim_json(const Claim& c) {
  json j = {{"kind", claim_kind_name(c.kind)}};
  if (c.kind != ClaimKind::Total) j["target"] = symbol_json(c.target);
  if (c.kind != ClaimKind::Value) {
    json parts = json::array();
    for (const auto& p : c.parts) parts.push_back(symbol_json(p));
    j["parts"] = std::move(parts);
  }
  if (c.kind == ClaimKind::Total || c.kind == ClaimKind::Value) j["value"] = to_string(c.value);
  return j;
}

Claim claim_from(const json& j) {
  Claim c;
  c.kind = parse_claim_kind(j.at("kind").get<std::string>());
  if (j.contains("target")) c.target = symbol_from(j.at("target"));
  if (j.contains("parts")) {
    for (const auto& p : j.at("parts")) c.parts.push_back(symbol_from(p));
  }
  if (j.contains("value")) c.value = parse_rational(j.at("value").get<std::string>());
  return c;
}

json pair_json(const LabelPair& p) { return json::array({p.first, p.second}); }

LabelPair pair_from(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::ParseError, "label pair must have 2 entries");
  return {j.at(0).get<std::string>(), j.at(1).get<std::string>()};
}

json state_json(const RationalSchmidtState& s) {
  json terms = json::array();
  for (const auto& t : s.terms()) {
    json term = {{"system", t.system},
                 {"environment", t.environment},
                 {"weight", to_string(t.weight)}};
    if (!t.system_factors.empty()) term["system_factors"] = t.system_factors;
    terms.push_back(std::move(term));
  }
  return {{"schmidt_form", s.schmidt_form()}, {"terms", std::move(terms)}};
}

RationalSchmidtState state_from(const json& j) {
  std::vector<SchmidtTerm> terms;
  for (const auto& t : j.at("terms")) {
    SchmidtTerm term{t.at("system").get<std::string>(), t.at("environment").get<std::string>(),
                     parse_rational(t.at("weight").get<std::string>()), {}};
    if (t.contains("system_factors")) {
      term.system_factors = t.at("system_factors").get<std::vector<std::string>>();
    }
    terms.push_back(std::move(term));
  }
  return RationalSchmidtState(std::move(terms), j.value("schmidt_form", true));
}

json step_json(const ProofStep& s) {
  json j = {{"kind", to_string(s.kind)},
            {"justification", s.justification},
            {"state", s.state}};
  if (!s.note.empty()) j["note"] = s.note;
  if (!s.result.empty()) j["result"] = s.result;
  switch (s.kind) {
    case StepKind::SwapCounterswap:
      j["intermediate"] = s.intermediate;
      j["system_swap"] = pair_json(s.system_swap);
      j["environment_swap"] = pair_json(s.environment_swap);
      break;
    case StepKind::LocalInvisibility:
      j["acted_side"] = to_string(s.acted_side);
      if (s.label_swap) j["label_swap"] = pair_json(*s.label_swap);
      if (s.ancilla_step) j["ancilla_step"] = *s.ancilla_step;
      break;
    case StepKind::CorrelationLink: {
      json links = json::array();
      for (const auto& l : s.links) links.push_back(pair_json(l));
      j["links"] = std::move(links);
      break;
    }
    case StepKind::FineGrain: {
      json blocks = json::array();
      for (const auto& b : s.blocks) {
        blocks.push_back({{"system", b.system},
                          {"environment", b.environment},
                          {"multiplicity", b.multiplicity},
                          {"fine_labels", b.fine_labels}});
      }
      j["blocks"] = std::move(blocks);
      break;
    }
    case StepKind::AncillaPremeasure:
      break;
    case StepKind::MergeNullTerms:
      j["direction"] = to_string(s.direction);
      if (s.direction == MergeDirection::Merge) j["merged"] = pair_json(s.merged);
      j["new_term"] = pair_json({s.new_system, s.new_environment});
      break;
    case StepKind::EquateCounts:
      j["mode"] = to_string(s.mode);
      if (s.merge_step) j["merge_step"] = *s.merge_step;
      break;
  }
  json claims = json::array();
  for (const auto& c : s.claims) claims.push_back(claim_json(c));
  j["claims"] = std::move(claims);
  return j;
}

ProofStep step_from(const json& j) {
  ProofStep s;
  s.kind = parse_enum(j.at("kind").get<std::string>(),
                      {StepKind::SwapCounterswap, StepKind::LocalInvisibility,
                       StepKind::CorrelationLink, StepKind::FineGrain,
                       StepKind::AncillaPremeasure, StepKind::MergeNullTerms,
                       StepKind::EquateCounts},
                      "step kind");
  s.justification = j.at("justification").get<std::string>();
  s.state = j.at("state").get<std::string>();
  s.note = j.value("note", "");
  s.result = j.value("result", "");
  s.intermediate = j.value("intermediate", "");
  if (j.contains("system_swap")) s.system_swap = pair_from(j.at("system_swap"));
  if (j.contains("environment_swap")) s.environment_swap = pair_from(j.at("environment_swap"));
  if (j.contains("acted_side")) {
    s.acted_side = parse_enum(j.at("acted_side").get<std::string>(),
                              {Side::System, Side::Environment}, "side");
  }
  if (j.contains("label_swap")) s.label_swap = pair_from(j.at("label_swap"));
  if (j.contains("ancilla_step")) s.ancilla_step = j.at("ancilla_step").get<std::size_t>();
  if (j.contains("links")) {
    for (const auto& l : j.at("links")) s.links.push_back(pair_from(l));
  }
  if (j.contains("blocks")) {
    for (const auto& b : j.at("blocks")) {
      s.blocks.push_back({b.at("system").get<std::string>(),
                          b.at("environment").get<std::string>(),
                          b.at("multiplicity").get<long>(),
                          b.at("fine_labels").get<std::vector<std::string>>()});
    }
  }
  if (j.contains("direction")) {
    s.direction = parse_enum(j.at("direction").get<std::string>(),
                             {MergeDirection::Merge, MergeDirection::Split}, "direction");
  }
  if (j.contains("merged")) s.merged = pair_from(j.at("merged"));
  if (j.contains("new_term")) {
    auto p = pair_from(j.at("new_term"));
    s.new_system = p.first;
    s.new_environment = p.second;
  }
  if (j.contains("mode")) {
    s.mode = parse_enum(j.at("mode").get<std::string>(),
                        {EquateMode::Normalization, EquateMode::Balance, EquateMode::Regroup},
                        "mode");
  }
  if (j.contains("merge_step")) s.merge_step = j.at("merge_step").get<std::size_t>();
  for (const auto& c : j.at("claims")) s.claims.push_back(claim_from(c));
  return s;
}

std::string ket(const std::string& label) { return "|" + label + ">"; }

std::string render_state(const RationalSchmidtState& s) {
  std::string out;
  for (const auto& t : s.terms()) {
    if (!out.empty()) out += " + ";
    out += "sqrt(" + to_string(t.weight) + ")" + ket(t.system) + ket(t.environment);
  }
  return out;
}

std::string render_symbol(const Symbol& s) { return "P(" + s.label + " | " + s.state + ")"; }

std::string render_claim(const Claim& c) {
  auto sum = [](const std::vector<Symbol>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : " + ") + render_symbol(p);
    return out;
  };
  switch (c.kind) {
    case ClaimKind::Equal: return render_symbol(c.target) + " = " + render_symbol(c.parts.at(0));
    case ClaimKind::Sum: return render_symbol(c.target) + " = " + sum(c.parts);
    case ClaimKind::Total: return sum(c.parts) + " = " + to_string(c.value);
    case ClaimKind::Value: return render_symbol(c.target) + " = " + to_string(c.value);
  }
  return "";
}

std::string swap_text(const LabelPair& p) { return p.first + "<->" + p.second; }

}  // namespace

nlohmann::json chain_to_json(const ProofChain& chain) {
  json states = json::object();
  for (const auto& [id, s] : chain.states) states[id] = state_json(s);
  json steps = json::array();
  for (const auto& s : chain.steps) steps.push_back(step_json(s));
  json conclusion = json::array();
  for (const auto& [label, q] : chain.conclusion) {
    conclusion.push_back({{"label", label}, {"probability", to_string(q)}});
  }
  return {{"schema_version", kChainSchemaVersion},
          {"root", chain.root},
          {"assumptions", chain.assumptions},
          {"states", std::move(states)},
          {"steps", std::move(steps)},
          {"conclusion", std::move(conclusion)}};
}

ProofChain chain_from_json(const nlohmann::json& j) {
  ProofChain chain;
  try {
    if (!j.is_object()) fail(ErrorCode::ParseError, "proof chain must be a JSON object");
    if (j.at("schema_version").get<int>() != kChainSchemaVersion) {
      fail(ErrorCode::ParseError, "unsupported proof chain schema version");
    }
    chain.root = j.at("root").get<std::string>();
    chain.assumptions = j.value("assumptions", std::vector<std::string>{});
    for (const auto& [id, s] : j.at("states").items()) {
      try {
        chain.states.emplace(id, state_from(s));
      } catch (const Error& e) {
        fail(ErrorCode::VerificationFailure, "state '" + id + "': " + e.what());
      }
    }
    for (const auto& s : j.at("steps")) chain.steps.push_back(step_from(s));
    for (const auto& c : j.at("conclusion")) {
      chain.conclusion.emplace_back(c.at("label").get<std::string>(),
                                    parse_rational(c.at("probability").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("proof chain: ") + e.what());
  }
  require_verified(chain);
  return chain;
}

std::string pretty_print(const ProofChain& chain) {
  std::ostringstream out;
  out << "root " << chain.root << " = " << render_state(chain.state(chain.root)) << "\n";
  for (const auto& a : chain.assumptions) out << "assumed: " << a << "\n";
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& s = chain.steps[i];
    out << "\n[" << i << "] " << to_string(s.kind) << "  (" << s.justification << ")\n";
    switch (s.kind) {
      case StepKind::SwapCounterswap:
        out << "    U_E[" << swap_text(s.environment_swap) << "] U_S["
            << swap_text(s.system_swap) << "] " << s.state << " = " << s.result << "\n";
        break;
      case StepKind::LocalInvisibility:
        out << "    " << s.state << " -> " << s.result << " acting on the "
            << to_string(s.acted_side);
        if (s.label_swap) out << " by " << swap_text(*s.label_swap);
        if (s.ancilla_step) out << " by the pre-measurement of step " << *s.ancilla_step;
        out << "\n";
        break;
      case StepKind::CorrelationLink:
        for (const auto& [sys, env] : s.links) {
          out << "    " << ket(sys) << ket(env) << " in " << s.state << "\n";
        }
        break;
      case StepKind::FineGrain:
      case StepKind::AncillaPremeasure:
        out << "    " << s.result << " = " << render_state(chain.state(s.result)) << "\n";
        break;
      case StepKind::MergeNullTerms:
        if (s.direction == MergeDirection::Merge) {
          out << "    0(" << ket(s.merged.first) << " + " << ket(s.merged.second) << ") -> 0"
              << ket(s.new_system) << ket(s.new_environment) << "\n";
        } else {
          out << "    + 0" << ket(s.new_system) << ket(s.new_environment) << "\n";
        }
        break;
      case StepKind::EquateCounts:
        out << "    " << to_string(s.mode) << "\n";
        break;
    }
    if (!s.note.empty()) out << "    note: " << s.note << "\n";
    for (const auto& c : s.claims) out << "    => " << render_claim(c) << "\n";
  }
  out << "\nconclusion:\n";
  for (const auto& [label, q] : chain.conclusion) {
    out << "  P(" << label << " | " << chain.root << ") = " << to_string(q) << "\n";
  }
  return out.str();
}

}  // namespace envlab::prover
