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
#include <numeric>
#include <set>
#include <unordered_map>

#include "envlab/error.hpp"
#include "envlab/prover.hpp"

namespace envlab::prover {
namespace {

struct Reject {
  std::string reason;
};

[[noreturn]] void reject(const std::string& reason) { throw Reject{reason}; }

void require(bool ok, const std::string& reason) {
  if (!ok) reject(reason);
}

// sum_k coeff_k * x_k = constant
struct Constraint {
  std::vector<std::pair<int, Rational>> terms;
  Rational constant;
};

bool same_symbol_pair(const Claim& c, const Symbol& a, const Symbol& b) {
  if (c.kind != ClaimKind::Equal || c.parts.size() != 1) return false;
  return (c.target == a && c.parts[0] == b) || (c.target == b && c.parts[0] == a);
}

// Sum_j exp(2 pi i j l / m) vanishes for every l != 0 mod m: the multiset
// {j l mod m} is the subgroup generated by gcd(l, m), each element hit
// gcd(l, m) times, i.e. a full set of (m / gcd)-th roots of unity.
bool fourier_block_consistent(long m) {
  for (long l = 1; l < m; ++l) {
    std::vector<long> hits(static_cast<std::size_t>(m), 0);
    for (long j = 0; j < m; ++j) ++hits[static_cast<std::size_t>((j * l) % m)];
    long g = std::gcd(l, m);
    if (m / g < 2) return false;
    for (long r = 0; r < m; ++r) {
      if (hits[static_cast<std::size_t>(r)] != (r % g == 0 ? g : 0)) return false;
    }
  }
  return true;
}

class Verifier {
 public:
  explicit Verifier(const ProofChain& chain) : chain_(chain) {}

  VerificationReport run() {
    VerificationReport report;
    std::size_t i = 0;
    try {
      require(chain_.states.count(chain_.root) != 0, "root state missing");
      for (; i < chain_.steps.size(); ++i) check_step(i);
      solve();
    } catch (const Reject& r) {
      return rejected(report, i, r.reason);
    } catch (const Error& e) {
      return rejected(report, i, e.what());
    }
    report.steps_valid = true;

    const auto& root = chain_.states.at(chain_.root);
    for (const auto& label : root.system_labels()) {
      auto it = ids_.find(key({label, chain_.root}));
      if (it == ids_.end()) continue;
      const auto& v = value_[static_cast<std::size_t>(find(it->second))];
      if (v) report.derived.emplace(label, *v);
    }

    if (chain_.conclusion.empty()) {
      report.reason = "chain has no conclusion";
      return report;
    }
    std::set<std::string> concluded;
    Rational total = 0;
    for (const auto& [label, q] : chain_.conclusion) {
      if (!root.has_system_label(label) || !concluded.insert(label).second) {
        report.reason = "conclusion label " + label + " is not a distinct root label";
        return report;
      }
      auto it = report.derived.find(label);
      if (it == report.derived.end()) {
        report.reason = "P(" + label + ") is not determined by the steps";
        return report;
      }
      if (it->second != q) {
        report.reason = "P(" + label + ") derived as " + to_string(it->second) +
                        " but concluded " + to_string(q);
        return report;
      }
      total += q;
    }
    if (concluded.size() != root.system_labels().size()) {
      report.reason = "conclusion does not cover every root label";
      return report;
    }
    if (total != 1) {
      report.reason = "conclusion sums to " + to_string(total);
      return report;
    }
    report.accepted = true;
    return report;
  }

 private:
  VerificationReport& rejected(VerificationReport& report, std::size_t i,
                               const std::string& reason) const {
    if (i < chain_.steps.size()) {
      report.reason = "step " + std::to_string(i) + " (" +
                      to_string(chain_.steps[i].kind) + "): " + reason;
      report.failing_step = i;
    } else {
      report.reason = reason;
    }
    return report;
  }

  static std::string key(const Symbol& s) { return s.label + '\x1f' + s.state; }

  const RationalSchmidtState& state(const std::string& id) const {
    auto it = chain_.states.find(id);
    require(it != chain_.states.end(), "unknown state id '" + id + "'");
    return it->second;
  }

  int node(const Symbol& s) {
    const auto& st = state(s.state);
    require(st.has_system_label(s.label) || st.has_environment_label(s.label) ||
                st.has_coarse_label(s.label),
            "label '" + s.label + "' does not occur in state '" + s.state + "'");
    auto [it, inserted] = ids_.emplace(key(s), static_cast<int>(parent_.size()));
    if (inserted) {
      parent_.push_back(it->second);
      value_.emplace_back();
    }
    return it->second;
  }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    auto& va = value_[static_cast<std::size_t>(a)];
    auto& vb = value_[static_cast<std::size_t>(b)];
    if (va && vb && *va != *vb) {
      reject("equality contradicts known values " + to_string(*va) + " and " +
             to_string(*vb));
    }
    if (!vb) vb = va;
    parent_[static_cast<std::size_t>(a)] = b;
  }

  void assign(int x, const Rational& q) {
    require(q >= 0 && q <= 1, "probability " + to_string(q) + " outside [0, 1]");
    auto& v = value_[static_cast<std::size_t>(find(x))];
    if (v && *v != q) {
      reject("value " + to_string(q) + " contradicts " + to_string(*v));
    }
    v = q;
  }

  void apply(const Claim& c) {
    switch (c.kind) {
      case ClaimKind::Equal:
        require(c.parts.size() == 1, "equality needs one right-hand symbol");
        unite(node(c.target), node(c.parts[0]));
        break;
      case ClaimKind::Value:
        assign(node(c.target), c.value);
        break;
      case ClaimKind::Sum: {
        Constraint k;
        k.terms.emplace_back(node(c.target), Rational(1));
        for (const auto& p : c.parts) k.terms.emplace_back(node(p), Rational(-1));
        constraints_.push_back(std::move(k));
        break;
      }
      case ClaimKind::Total: {
        Constraint k;
        for (const auto& p : c.parts) k.terms.emplace_back(node(p), Rational(1));
        k.constant = c.value;
        constraints_.push_back(std::move(k));
        break;
      }
    }
  }

  void solve() {
    std::vector<bool> done(constraints_.size(), false);
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t n = 0; n < constraints_.size(); ++n) {
        if (done[n]) continue;
        std::map<int, Rational> unknown;
        Rational rest = constraints_[n].constant;
        for (const auto& [x, coeff] : constraints_[n].terms) {
          int r = find(x);
          const auto& v = value_[static_cast<std::size_t>(r)];
          if (v) {
            rest -= coeff * *v;
          } else {
            unknown[r] += coeff;
          }
        }
        for (auto it = unknown.begin(); it != unknown.end();) {
          it = it->second == 0 ? unknown.erase(it) : std::next(it);
        }
        if (unknown.empty()) {
          require(rest == 0, "linear constraint violated by " + to_string(rest));
          done[n] = true;
        } else if (unknown.size() == 1) {
          assign(unknown.begin()->first, rest / unknown.begin()->second);
          done[n] = true;
          progress = true;
        }
      }
    }
  }

  void check_justification(const ProofStep& s) {
    std::string expected;
    switch (s.kind) {
      case StepKind::SwapCounterswap: expected = "Premise I"; break;
      case StepKind::LocalInvisibility: expected = "Premise II"; break;
      case StepKind::CorrelationLink: expected = "Premise III"; break;
      case StepKind::FineGrain: expected = "construction: fine-graining"; break;
      case StepKind::AncillaPremeasure: expected = "construction: second pre-measurement"; break;
      case StepKind::MergeNullTerms: expected = "Premise I"; break;
      case StepKind::EquateCounts: expected = "probability axiom"; break;
    }
    require(s.justification == expected,
            "justification '" + s.justification + "' should be '" + expected + "'");
  }

  // Every claim must be an equality of `label` between the two states for
  // some label accepted by `allowed`.
  template <typename Pred>
  void require_carried_equalities(const ProofStep& s, const std::string& from,
                                  const std::string& to, Pred allowed) {
    for (const auto& c : s.claims) {
      require(c.kind == ClaimKind::Equal && c.parts.size() == 1 &&
                  c.target.label == c.parts[0].label && allowed(c.target.label) &&
                  same_symbol_pair(c, {c.target.label, from}, {c.target.label, to}),
              "claim not licensed by this step");
    }
  }

  void check_swap(const ProofStep& s) {
    const auto& x = state(s.state);
    require(x.schmidt_form(), "swap needs a Schmidt-form state");
    require(x.has_system_label(s.system_swap.first) &&
                x.has_system_label(s.system_swap.second) &&
                s.system_swap.first != s.system_swap.second,
            "system swap labels must be two distinct system labels");
    require(x.has_environment_label(s.environment_swap.first) &&
                x.has_environment_label(s.environment_swap.second) &&
                s.environment_swap.first != s.environment_swap.second,
            "environment swap labels must be two distinct environment labels");
    require(state(s.intermediate).same_terms(x.with_system_swap(s.system_swap)),
            "intermediate is not the system-swapped state");
    require(state(s.result).same_terms(
                state(s.intermediate).with_environment_swap(s.environment_swap)),
            "result is not the counterswapped state");
    require(state(s.result).same_terms(x), "counterswap does not restore the state");
    require_carried_equalities(s, s.state, s.result, [&](const std::string& label) {
      return x.has_system_label(label);
    });
  }

  void check_invisibility(std::size_t i, const ProofStep& s) {
    const auto& before = state(s.state);
    const auto& after = state(s.result);
    if (s.label_swap) {
      require(!s.ancilla_step, "invisibility step names two operations");
      if (s.acted_side == Side::System) {
        require(before.has_system_label(s.label_swap->first) &&
                    before.has_system_label(s.label_swap->second),
                "swap labels are not system labels");
        require(after.same_terms(before.with_system_swap(*s.label_swap)),
                "result is not the system-swapped state");
        require_carried_equalities(s, s.state, s.result, [&](const std::string& label) {
          return before.has_environment_label(label);
        });
      } else {
        require(before.has_environment_label(s.label_swap->first) &&
                    before.has_environment_label(s.label_swap->second),
                "swap labels are not environment labels");
        require(after.same_terms(before.with_environment_swap(*s.label_swap)),
                "result is not the environment-swapped state");
        require_carried_equalities(s, s.state, s.result, [&](const std::string& label) {
          return before.has_system_label(label);
        });
      }
      return;
    }
    require(s.ancilla_step.has_value(), "invisibility step names no operation");
    require(*s.ancilla_step < i, "ancilla step must precede");
    const auto& a = chain_.steps[*s.ancilla_step];
    require(a.kind == StepKind::AncillaPremeasure && a.state == s.state &&
                a.result == s.result,
            "referenced step is not the matching pre-measurement");
    require(s.acted_side == Side::Environment, "the pre-measurement acts on the environment");
    require_carried_equalities(s, s.state, s.result, [&](const std::string& label) {
      return before.has_system_label(label) && after.has_coarse_label(label);
    });
  }

  void check_link(const ProofStep& s) {
    const auto& x = state(s.state);
    require(x.schmidt_form(), "links need a Schmidt-form state");
    require(!s.links.empty(), "no links");
    for (const auto& [sys, env] : s.links) {
      auto k = x.find_system(sys);
      require(k && x.terms()[*k].environment == env,
              "(" + sys + ", " + env + ") is not a term of the state");
    }
    for (const auto& c : s.claims) {
      bool ok = std::any_of(s.links.begin(), s.links.end(), [&](const LabelPair& l) {
        return same_symbol_pair(c, {l.first, s.state}, {l.second, s.state});
      });
      require(ok, "claim is not one of the step's links");
    }
  }

  void check_fine_grain(const ProofStep& s) {
    const auto& x = state(s.state);
    const auto& y = state(s.result);
    require(s.blocks.size() == x.size(), "one block per source term");
    std::optional<Rational> unit;
    std::vector<SchmidtTerm> expected;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const auto& t = x.terms()[k];
      const auto& b = s.blocks[k];
      require(b.system == t.system && b.environment == t.environment,
              "block does not match source term " + t.system);
      if (t.weight == 0) {
        require(b.multiplicity == 0 && b.fine_labels == std::vector{t.environment},
                "null term must be carried unchanged");
        expected.push_back({t.system, t.environment, 0, {}});
        continue;
      }
      require(b.multiplicity >= 1 &&
                  b.fine_labels.size() == static_cast<std::size_t>(b.multiplicity),
              "multiplicity and fine labels disagree");
      Rational q = t.weight / b.multiplicity;
      if (!unit) unit = q;
      require(q == *unit, "blocks do not share a common fine weight");
      require(Rational(b.multiplicity) * *unit == t.weight, "m * (1/N) != weight");
      require(fourier_block_consistent(b.multiplicity), "Fourier block inconsistent");
      for (const auto& f : b.fine_labels) expected.push_back({t.system, f, *unit, {}});
    }
    require(y.same_terms(RationalSchmidtState(expected, false)),
            "result is not the fine-grained state");
    require_carried_equalities(s, s.state, s.result, [&](const std::string& label) {
      return x.has_system_label(label);
    });
  }

  void check_ancilla(const ProofStep& s) {
    const auto& x = state(s.state);
    const auto& y = state(s.result);
    require(y.schmidt_form(), "pre-measured state must be in Schmidt form");
    require(x.size() == y.size(), "term count changed");
    for (std::size_t k = 0; k < x.size(); ++k) {
      const auto& a = x.terms()[k];
      const auto& b = y.terms()[k];
      require(b.weight == a.weight, "weight changed by the pre-measurement");
      require(b.system_factors == std::vector{a.system, a.environment},
              "composite ket " + b.system + " is not (" + a.system + ", " +
                  a.environment + ")");
      require(!x.has_environment_label(b.environment),
              "ancilla label " + b.environment + " is not fresh");
    }
    require(s.claims.empty(), "a construction step makes no probability claims");
  }

  void check_merge(const ProofStep& s) {
    const auto& x = state(s.state);
    const auto& y = state(s.result);
    require(!x.has_system_label(s.new_system) && !x.has_coarse_label(s.new_system) &&
                !x.has_environment_label(s.new_environment),
            "new term labels must be fresh");
    std::vector<SchmidtTerm> expected;
    if (s.direction == MergeDirection::Split) {
      expected = x.terms();
      expected.push_back({s.new_system, s.new_environment, 0, {}});
      require(y.same_terms(RationalSchmidtState(expected, x.schmidt_form())),
              "result is not the state with one added null term");
      require_carried_equalities(s, s.state, s.result, [&](const std::string& label) {
        return x.has_system_label(label);
      });
      return;
    }
    auto a = x.find_system(s.merged.first);
    auto b = x.find_system(s.merged.second);
    require(a && b && *a != *b, "merged labels must be two system labels of the state");
    require(x.terms()[*a].weight == 0 && x.terms()[*b].weight == 0,
            "only zero-weight terms can be merged");
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k == *a) {
        expected.push_back({s.new_system, s.new_environment, 0, {}});
      } else if (k != *b) {
        expected.push_back(x.terms()[k]);
      }
    }
    require(y.same_terms(RationalSchmidtState(expected, x.schmidt_form())),
            "result is not the merged state");
    for (const auto& c : s.claims) {
      if (c.kind == ClaimKind::Sum) {
        bool ok = c.target == Symbol{s.new_system, s.result} && c.parts.size() == 2 &&
                  ((c.parts[0] == Symbol{s.merged.first, s.state} &&
                    c.parts[1] == Symbol{s.merged.second, s.state}) ||
                   (c.parts[1] == Symbol{s.merged.first, s.state} &&
                    c.parts[0] == Symbol{s.merged.second, s.state}));
        require(ok, "sum claim must add the two merged terms");
        continue;
      }
      const std::string& label = c.target.label;
      require(c.kind == ClaimKind::Equal && c.parts.size() == 1 &&
                  c.parts[0].label == label && label != s.merged.first &&
                  label != s.merged.second && x.has_system_label(label) &&
                  same_symbol_pair(c, {label, s.state}, {label, s.result}),
              "claim not licensed by this merge");
    }
  }

  void check_counts(std::size_t i, const ProofStep& s) {
    const auto& x = state(s.state);
    switch (s.mode) {
      case EquateMode::Normalization: {
        require(s.claims.size() == 1 && s.claims[0].kind == ClaimKind::Total &&
                    s.claims[0].value == 1,
                "normalization is a single total equal to 1");
        std::set<std::string> seen;
        for (const auto& p : s.claims[0].parts) {
          require(p.state == s.state && x.has_system_label(p.label) &&
                      seen.insert(p.label).second,
                  "normalization parts must be distinct system labels of the state");
        }
        require(seen.size() == x.system_labels().size(),
                "normalization must cover every system label");
        return;
      }
      case EquateMode::Regroup: {
        require(s.claims.size() == 1 && s.claims[0].kind == ClaimKind::Sum,
                "regrouping is a single sum");
        const auto& c = s.claims[0];
        require(c.target.state == s.state && x.has_coarse_label(c.target.label),
                "regroup target must be a coarse label of the state");
        std::set<std::string> expected;
        for (const auto& t : x.terms()) {
          if (!t.system_factors.empty() && t.system_factors.front() == c.target.label) {
            expected.insert(t.system);
          }
        }
        std::set<std::string> parts;
        for (const auto& p : c.parts) {
          require(p.state == s.state && parts.insert(p.label).second,
                  "regroup parts must be distinct labels of the state");
        }
        require(parts == expected, "regroup parts must be exactly the composites");
        return;
      }
      case EquateMode::Balance: {
        require(s.merge_step && *s.merge_step < i, "balance needs a preceding merge");
        const auto& m = chain_.steps[*s.merge_step];
        require(m.kind == StepKind::MergeNullTerms && m.direction == MergeDirection::Merge &&
                    m.state == s.state && m.result == s.result,
                "referenced step is not the matching merge");
        const auto& y = state(s.result);
        auto before = x.null_terms();
        auto after = y.null_terms();
        require(before.size() == after.size() + 1 && after.size() >= 2,
                "balance needs n >= 3 null terms merged to n - 1");
        // p*n = p*(n-1) needs every null label of both states in one class.
        int cls = find(node({x.terms()[before[0]].system, s.state}));
        for (auto k : before) {
          require(find(node({x.terms()[k].system, s.state})) == cls,
                  "null terms of the state are not shown equiprobable");
        }
        for (auto k : after) {
          require(find(node({y.terms()[k].system, s.result})) == cls,
                  "null terms of the merged state are not tied to the original");
        }
        require(!s.claims.empty(), "balance makes no claim");
        for (const auto& c : s.claims) {
          bool ok = c.kind == ClaimKind::Value && c.value == 0;
          bool on_null = (c.target.state == s.state &&
                          std::any_of(before.begin(), before.end(), [&](std::size_t k) {
                            return x.terms()[k].system == c.target.label;
                          })) ||
                         (c.target.state == s.result &&
                          std::any_of(after.begin(), after.end(), [&](std::size_t k) {
                            return y.terms()[k].system == c.target.label;
                          }));
          require(ok && on_null, "balance only concludes p = 0 for null labels");
        }
        return;
      }
    }
  }

  void check_step(std::size_t i) {
    const auto& s = chain_.steps[i];
    check_justification(s);
    state(s.state);
    switch (s.kind) {
      case StepKind::SwapCounterswap: check_swap(s); break;
      case StepKind::LocalInvisibility: check_invisibility(i, s); break;
      case StepKind::CorrelationLink: check_link(s); break;
      case StepKind::FineGrain: check_fine_grain(s); break;
      case StepKind::AncillaPremeasure: check_ancilla(s); break;
      case StepKind::MergeNullTerms: check_merge(s); break;
      case StepKind::EquateCounts: check_counts(i, s); break;
    }
    for (const auto& c : s.claims) apply(c);
  }

  const ProofChain& chain_;
  std::unordered_map<std::string, int> ids_;
  std::vector<int> parent_;
  std::vector<std::optional<Rational>> value_;
  std::vector<Constraint> constraints_;
};

}  // namespace

VerificationReport verify(const ProofChain& chain) { return Verifier(chain).run(); }

void require_verified(const ProofChain& chain) {
  auto report = verify(chain);
  if (!report.accepted) fail(ErrorCode::VerificationFailure, report.reason);
}

}  // namespace envlab::prover
