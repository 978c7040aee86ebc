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

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "envlab/analysis.hpp"

namespace envlab {
namespace {

using nlohmann::json;

json estimate_json(const Estimate& e) {
  return {{"value", e.value}, {"sigma", e.sigma}, {"one_minus_value", 1.0 - e.value}};
}

json metric_json(const CompanionMetric& m) {
  json j = {{"name", m.name}, {"linear", m.linear}, {"sigma", m.sigma}};
  j["mle"] = m.mle ? json(*m.mle) : json(nullptr);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void csv_row(std::ostringstream& out, const std::string& metric, const std::string& label,
             double value, double sigma, const std::string& pass) {
  out << metric << ',' << csv_field(label) << ',' << format_number(value) << ','
      << format_number(sigma) << ',' << pass << '\n';
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_number(double x) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

nlohmann::json report_to_json(const PremiseReport& report, const nlohmann::json& config) {
  const auto& v = report.verdicts;
  json premise2 = json::array();
  for (const auto& e : v.premise2) {
    json row = estimate_json(e.estimate);
    row["label"] = e.label;
    row["pass"] = v.policy.passes(e.estimate);
    premise2.push_back(std::move(row));
  }
  json cells = json::array();
  for (const auto& c : v.premise3.cells) {
    cells.push_back({{"outcome", c.outcome},
                     {"condition", c.condition},
                     {"value", c.estimate.value},
                     {"sigma", c.estimate.sigma},
                     {"condition_total", c.condition_total}});
  }
  json links = json::array();
  for (const auto& l : v.premise3_links) {
    links.push_back({{"label", l.label},
                     {"value", l.estimate.value},
                     {"sigma", l.estimate.sigma},
                     {"pass", v.policy.passes(l.estimate)}});
  }
  json premise1 = estimate_json(v.premise1);
  premise1["comparison"] = "original_vs_twice_swapped";
  premise1["record"] = std::string(to_string(ProjectorMode::FullJoint36));
  premise1["pass"] = v.premise1_pass;

  json j = {
      {"schema_version", kReportSchemaVersion},
      {"experiment", std::string(to_string(v.experiment))},
      {"config", config},
      {"policy",
       {{"threshold", v.policy.threshold},
        {"sigma_multiplier", v.policy.sigma_multiplier},
        {"rule", "value + sigma_multiplier * sigma >= threshold"}}},
      {"premise1", std::move(premise1)},
      {"premise2",
       {{"record", std::string(to_string(ProjectorMode::ReducedSingle6))},
        {"comparisons", std::move(premise2)},
        {"pass", v.premise2_pass}}},
      {"premise3",
       {{"record", std::string(to_string(ProjectorMode::ConditionalCircular4))},
        {"cells", std::move(cells)},
        {"links", std::move(links)},
        {"pass", v.premise3_pass}}},
      {"all_pass", v.all_pass()},
      {"lineage", v.lineage},
  };
  if (report.companion) {
    const auto& c = *report.companion;
    json fidelities = json::array();
    for (const auto& m : c.fidelities) fidelities.push_back(metric_json(m));
    json purities = json::array();
    for (const auto& m : c.purities) purities.push_back(metric_json(m));
    j["companion"] = {{"fidelity_convention", c.fidelity_convention},
                      {"sigma_method", c.sigma_method},
                      {"resamples", c.resamples},
                      {"fidelities", std::move(fidelities)},
                      {"purities", std::move(purities)},
                      {"unconverged", c.unconverged}};
  } else {
    j["companion"] = nullptr;
  }
  return j;
}

std::string report_to_csv(const PremiseReport& report) {
  const auto& v = report.verdicts;
  std::ostringstream out;
  out << "metric,label,value,sigma,pass\n";
  csv_row(out, "premise1_b", "original_vs_twice_swapped", v.premise1.value, v.premise1.sigma,
          yes_no(v.premise1_pass));
  csv_row(out, "premise1_one_minus_b", "original_vs_twice_swapped", 1.0 - v.premise1.value,
          v.premise1.sigma, "");
  for (const auto& e : v.premise2) {
    csv_row(out, "premise2_b", e.label, e.estimate.value, e.estimate.sigma,
            yes_no(v.policy.passes(e.estimate)));
    csv_row(out, "premise2_one_minus_b", e.label, 1.0 - e.estimate.value, e.estimate.sigma, "");
  }
  for (const auto& l : v.premise3_links) {
    csv_row(out, "premise3_link", l.label, l.estimate.value, l.estimate.sigma,
            yes_no(v.policy.passes(l.estimate)));
  }
  for (const auto& c : v.premise3.cells) {
    csv_row(out, "premise3_conditional", c.outcome + "|" + c.condition, c.estimate.value,
            c.estimate.sigma, "");
  }
  if (report.companion) {
    auto rows = [&](const std::vector<CompanionMetric>& ms, const std::string& stem) {
      for (const auto& m : ms) {
        if (m.mle) csv_row(out, stem + "_mle", m.name, *m.mle, m.sigma, "");
        csv_row(out, stem + "_linear", m.name, m.linear, m.sigma, "");
      }
    };
    rows(report.companion->fidelities, "companion_fidelity");
    rows(report.companion->purities, "companion_purity");
  }
  return out.str();
}

std::string report_to_text(const PremiseReport& report) {
  const auto& v = report.verdicts;
  std::ostringstream out;
  auto est = [](const Estimate& e) {
    return format_number(e.value) + " +/- " + format_number(e.sigma);
  };
  auto verdict = [](bool pass) { return pass ? "PASS" : "FAIL"; };
  out << "experiment: " << to_string(v.experiment) << "\n";
  out << "rule: value + " << format_number(v.policy.sigma_multiplier) << " sigma >= "
      << format_number(v.policy.threshold) << "\n\n";
  out << "Premise I   " << verdict(v.premise1_pass) << "\n";
  out << "  B(original, twice swapped) = " << est(v.premise1)
      << "   1 - B = " << format_number(1.0 - v.premise1.value) << "\n";
  out << "Premise II  " << verdict(v.premise2_pass) << "\n";
  for (const auto& e : v.premise2) out << "  B " << e.label << " = " << est(e.estimate) << "\n";
  out << "Premise III " << verdict(v.premise3_pass) << "\n";
  for (const auto& l : v.premise3_links) {
    out << "  P(" << l.label << ") = " << est(l.estimate) << "\n";
  }
  if (report.companion) {
    const auto& c = *report.companion;
    out << "\ncompanion metrics (tomographic; not used by the verdicts)\n";
    out << "  fidelity: " << c.fidelity_convention << ", sigma: " << c.sigma_method << " ("
        << c.resamples << " resamples)\n";
    auto rows = [&](const std::vector<CompanionMetric>& ms, const char* what) {
      for (const auto& m : ms) {
        out << "  " << what << " " << m.name << ": ";
        if (m.mle) out << "mle " << format_number(*m.mle) << ", ";
        out << "linear " << format_number(m.linear) << " +/- " << format_number(m.sigma)
            << "\n";
      }
    };
    rows(c.fidelities, "fidelity");
    rows(c.purities, "purity");
    for (const auto& name : c.unconverged) out << "  note: " << name << " hit the iteration cap\n";
  }
  return out.str();
}

}  // namespace envlab
