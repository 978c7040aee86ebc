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

// End-to-end runs: simulated experiments, report artifacts, determinism and
// the command-line front end.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "envlab/born.hpp"
#include "envlab/experiment.hpp"
#include "envlab/run.hpp"
#include "support.hpp"

using namespace envlab;
using namespace envlab::testing;
namespace fs = std::filesystem;

namespace {

RunConfig config_for(ExperimentKind kind, std::uint64_t seed, bool noisy = true) {
  RunConfig c;
  c.experiment = kind;
  c.seed = seed;
  c.noise = noisy ? NoiseModel{} : NoiseModel::none();
  c.companion_resamples = 10;
  c.resamples = 200;
  return c;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("envlab-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Command {
  int status = -1;
  std::string out;
  std::string err;
};

Command cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  fs::path err_file = fs::temp_directory_path() / ("envlab-cli-err-" + std::to_string(++counter));
  std::string command = env + " " ENVLAB_CLI " " + args + " 2>" + err_file.string();
  Command result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) result.out.append(buf, n);
  int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.err = slurp(err_file);
  fs::remove(err_file);
  return result;
}

}  // namespace

TEST(Simulate, NoiselessRunsPassWithUnitCoefficients) {
  for (auto kind : {ExperimentKind::Local, ExperimentKind::Nonlocal}) {
    auto result = simulate(config_for(kind, 1, false));
    const auto& v = result.report.verdicts;
    EXPECT_NEAR(v.premise1.value, 1.0, 1e-12);
    EXPECT_EQ(v.premise1.sigma, 0.0);
    ASSERT_EQ(v.premise2.size(), 3u);
    EXPECT_EQ(v.premise2[0].label, "vs_system_swapped");
    EXPECT_EQ(v.premise2[1].label, "vs_environment_swapped");
    EXPECT_EQ(v.premise2[2].label, "vs_twice_swapped");
    for (const auto& e : v.premise2) EXPECT_NEAR(e.estimate.value, 1.0, 1e-12) << e.label;
    for (const auto& cell : v.premise3.cells) {
      EXPECT_TRUE(cell.estimate.value == 0.0 || cell.estimate.value == 1.0);
    }
    EXPECT_EQ(v.premise3.cell("R", "+1").estimate.value, 1.0);
    EXPECT_EQ(v.premise3.cell("L", "-1").estimate.value, 1.0);
    EXPECT_TRUE(v.all_pass()) << to_string(kind);

    ASSERT_TRUE(result.report.companion.has_value());
    for (const auto& m : result.report.companion->purities) {
      EXPECT_NEAR(m.linear, 0.5, 1e-12) << m.name;
      ASSERT_TRUE(m.mle.has_value());
      EXPECT_NEAR(*m.mle, 0.5, 1e-9) << m.name;
    }
    for (const auto& m : result.report.companion->fidelities) {
      EXPECT_NEAR(m.linear, 1.0, 1e-9) << m.name;
    }
  }
}

TEST(Simulate, VerdictLineageNamesOnlyCountRecords) {
  auto result = simulate(config_for(ExperimentKind::Local, 2, false));
  ASSERT_FALSE(result.report.verdicts.lineage.empty());
  for (const auto& entry : result.report.verdicts.lineage) {
    EXPECT_EQ(entry.find("density"), std::string::npos) << entry;
    EXPECT_EQ(entry.find("mle"), std::string::npos) << entry;
  }
}

TEST(Simulate, NoisyNonlocalMagnitudes) {
  auto c = config_for(ExperimentKind::Nonlocal, 42);
  c.resamples = 1000;
  c.companion = false;
  auto v = simulate(c).report.verdicts;
  EXPECT_GE(v.premise1.value, 0.995);
  EXPECT_GT(v.premise1.sigma, 0.0);
  for (const auto& e : v.premise2) EXPECT_GE(e.estimate.value, 0.995);
  for (const auto& link : v.premise3_links) EXPECT_GE(link.estimate.value, 0.99);
  EXPECT_TRUE(v.all_pass());
}

TEST(Simulate, CorruptedEnvironmentSwapFailsPremiseOne) {
  for (auto kind : {ExperimentKind::Local, ExperimentKind::Nonlocal}) {
    auto c = config_for(kind, 3, false);
    c.corrupt_environment_swap = true;
    c.companion = false;
    auto v = simulate(c).report.verdicts;
    EXPECT_LT(v.premise1.value, 0.95) << to_string(kind);
    EXPECT_FALSE(v.premise1_pass);
    EXPECT_FALSE(v.all_pass());
  }
}

// Pure shot noise at 10^5 shots must not turn the noiseless pass into a
// fail: at least 99 of 100 seeds pass every premise.
TEST(SimulateProperty, ShotNoiseRarelyFlipsVerdicts) {
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto c = config_for(seed % 2 ? ExperimentKind::Local : ExperimentKind::Nonlocal, seed);
    c.shots_per_setting = 100000;
    c.resamples = 100;
    c.companion = false;
    passes += simulate(c).report.verdicts.all_pass() ? 1 : 0;
  }
  EXPECT_GE(passes, 99);
}

TEST(Simulate, JitterDrawsPlateErrorsFromTheSeed) {
  auto c = config_for(ExperimentKind::Local, 9);
  c.noise = parse_noise("shot+jitter=0.02");
  c.companion = false;
  auto a = simulate(c);
  auto b = simulate(c);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NE(a.plate_errors[k].system, 0.0);
    EXPECT_EQ(a.plate_errors[k].system, b.plate_errors[k].system);
    EXPECT_LT(std::abs(a.plate_errors[k].environment), 0.2);
  }
  EXPECT_LT(a.report.verdicts.premise1.value, 1.0);
}

TEST(RunConfig, Validation) {
  RunConfig c;
  EXPECT_ERROR_CODE(c.validate(), ErrorCode::InvalidArgument);
  c.seed = 1;
  EXPECT_NO_THROW(c.validate());
  c.shots_per_setting = 0;
  EXPECT_ERROR_CODE(c.validate(), ErrorCode::InvalidArgument);
  c.shots_per_setting = 10;
  c.resamples = 99;
  EXPECT_ERROR_CODE(c.validate(), ErrorCode::InvalidArgument);
  c.resamples = 100;
  c.report_formats = {"json", "xml"};
  EXPECT_ERROR_CODE(c.validate(), ErrorCode::InvalidArgument);
}

TEST(RunConfig, NoiseSpecs) {
  EXPECT_EQ(parse_noise("none"), NoiseModel::none());
  EXPECT_EQ(parse_noise("shot"), NoiseModel{});
  EXPECT_EQ(parse_noise("shot+jitter=0.01").unitary_jitter, 0.01);
  for (const char* spec : {"none", "shot", "shot+jitter=0.25"}) {
    EXPECT_EQ(noise_to_string(parse_noise(spec)), spec);
  }
  for (const char* bad : {"", "poisson", "shot+jitter=", "shot+jitter=-1", "shot+jitter=1x"}) {
    EXPECT_ERROR_CODE(parse_noise(bad), ErrorCode::ParseError);
  }
}

TEST(RunConfig, JsonCarriesTheConfigButNotTheDirectory) {
  auto c = config_for(ExperimentKind::Nonlocal, 5);
  c.output_dir = "/somewhere";
  auto j = c.to_json();
  EXPECT_EQ(j["experiment"], "nonlocal");
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["shots_per_setting"], 10000);
  EXPECT_EQ(j["noise"]["spec"], "shot");
  EXPECT_FALSE(j.contains("output_dir"));
}

TEST(Artifacts, LayoutAndReportContents) {
  auto dir = scratch("layout");
  auto c = config_for(ExperimentKind::Local, 42);
  c.output_dir = dir.string();
  auto result = run_experiment(c);
  fs::path root = dir / "local";
  for (const char* cfg : {"original", "system_swapped", "environment_swapped", "twice_swapped"}) {
    EXPECT_TRUE(fs::exists(root / "counts" / (std::string("full_") + cfg + ".csv")));
    EXPECT_TRUE(fs::exists(root / "counts" / (std::string("reduced_") + cfg + ".csv")));
    EXPECT_TRUE(fs::exists(root / "density" / (std::string("reduced_") + cfg + "_linear.json")));
  }
  EXPECT_TRUE(fs::exists(root / "counts" / "conditional_original.csv"));
  EXPECT_TRUE(fs::exists(root / "density" / "full_original_mle.json"));

  auto report = nlohmann::json::parse(slurp(root / "report.json"));
  EXPECT_EQ(report["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(report["config"], c.to_json());
  EXPECT_EQ(report["policy"]["threshold"], 0.99);
  EXPECT_EQ(report["premise2"]["comparisons"].size(), 3u);
  EXPECT_EQ(report["companion"]["fidelity_convention"], "uhlmann_squared");
  auto in_unit = [](double x) { return x >= -1e-12 && x <= 1.0 + 1e-12; };
  EXPECT_TRUE(in_unit(report["premise1"]["value"]));
  EXPECT_GE(report["premise1"]["sigma"].get<double>(), 0.0);
  for (const auto& row : report["premise2"]["comparisons"]) {
    EXPECT_TRUE(in_unit(row["value"]));
    EXPECT_NEAR(row["one_minus_value"].get<double>(), 1.0 - row["value"].get<double>(), 0.0);
  }
  for (const auto& cell : report["premise3"]["cells"]) EXPECT_TRUE(in_unit(cell["value"]));

  std::string csv = slurp(root / "report.csv");
  EXPECT_EQ(csv.rfind("metric,label,value,sigma,pass\n", 0), 0u);
  EXPECT_NE(csv.find("premise1_b,original_vs_twice_swapped,"), std::string::npos);
  EXPECT_NE(csv.find("premise1_one_minus_b,"), std::string::npos);
  EXPECT_NE(csv.find("companion_purity_mle,"), std::string::npos);
  EXPECT_NE(slurp(root / "report.txt").find("Premise III"), std::string::npos);

  auto counts = parse_csv(slurp(root / "counts" / "full_original.csv"));
  EXPECT_EQ(counts, *result.record.full[0]);
  fs::remove_all(dir);
}

TEST(Artifacts, FormatsSelectReports) {
  auto dir = scratch("formats");
  auto c = config_for(ExperimentKind::Local, 1, false);
  c.output_dir = dir.string();
  c.report_formats = {"csv"};
  c.companion = false;
  run_experiment(c);
  EXPECT_FALSE(fs::exists(dir / "local" / "report.json"));
  EXPECT_TRUE(fs::exists(dir / "local" / "report.csv"));
  EXPECT_FALSE(fs::exists(dir / "local" / "density" / "full_original_mle.json"));
  fs::remove_all(dir);
}

TEST(Determinism, SerialAndParallelRunsAreByteIdentical) {
  std::vector<std::map<std::string, std::string>> runs;
  for (bool parallel : {false, false, true}) {
    auto dir = scratch(parallel ? "par" : "ser" + std::to_string(runs.size()));
    auto c = config_for(ExperimentKind::Nonlocal, 77);
    c.noise = parse_noise("shot+jitter=0.01");
    c.parallel = parallel;
    c.output_dir = dir.string();
    auto files = write_artifacts(simulate(c));
    std::map<std::string, std::string> contents;
    for (const auto& f : files) {
      std::string text = slurp(f);
      if (fs::path(f).filename() == "report.json") {
        // Only the recorded execution mode may differ.
        auto j = nlohmann::json::parse(text);
        EXPECT_EQ(j["config"]["parallel"], parallel);
        j["config"].erase("parallel");
        text = j.dump();
      }
      contents[fs::relative(f, dir).string()] = text;
    }
    runs.push_back(std::move(contents));
    fs::remove_all(dir);
  }
  ASSERT_EQ(runs[0].size(), runs[1].size());
  for (const auto& [name, text] : runs[0]) {
    EXPECT_EQ(text, runs[1].at(name)) << name;
    EXPECT_EQ(text, runs[2].at(name)) << name << " (parallel)";
  }
}

// The link table of the pre-measurement proof step against the conditional
// frequencies of noiseless counts simulated on the same state, with s_1, s_2
// carried by R, L and a_1, a_2 by +1, -1.
TEST(CrossModule, EelLinkTableMatchesSimulatedConditionals) {
  auto step = prover::check_eel_subsumption(2, 2);
  auto table = prover::link_table(step);
  ASSERT_EQ(table.size(), 4u);

  auto psi = prepare(ExperimentKind::Local);
  auto rho = density_of(psi);
  auto probs = born_probabilities(
      rho, tomography_projectors(ProjectorMode::ConditionalCircular4, rho.space()));
  auto conditionals =
      conditional_frequencies(sample_counts(probs, 10000, NoiseModel::none(), 1));
  const std::map<std::string, std::string> system = {{"s_1", "R"}, {"s_2", "L"}};
  const std::map<std::string, std::string> ancilla = {{"a_1", "+1"}, {"a_2", "-1"}};
  for (const auto& [key, q] : table) {
    const auto& [s, a] = key;
    EXPECT_EQ(conditionals.cell(system.at(s), ancilla.at(a)).estimate.value, q.get_d())
        << s << "|" << a;
  }
}

TEST(Prover, RunWritesVerifiedChain) {
  auto dir = scratch("prove");
  auto run = run_prover({"2/3", "1/3"}, dir.string());
  EXPECT_TRUE(run.verification.accepted);
  ASSERT_EQ(run.files.size(), 2u);
  auto chain = prover::chain_from_json(nlohmann::json::parse(slurp(dir / "proof.json")));
  EXPECT_EQ(chain.conclusion.at(0).second, prover::Rational(2, 3));
  EXPECT_ERROR_CODE(run_prover({"2/x"}, ""), ErrorCode::ParseError);
  EXPECT_ERROR_CODE(run_prover({}, ""), ErrorCode::InvalidArgument);
  fs::remove_all(dir);
}

// ---- command line ----

TEST(Cli, ProveExitCodesAndOutputs) {
  auto dir = scratch("cli-prove");
  auto ok = cli("prove 2/3 1/3 --output-dir " + dir.string());
  EXPECT_EQ(ok.status, 0) << ok.err;
  EXPECT_NE(ok.out.find("P(s_0 | psi) = 2/3"), std::string::npos) << ok.out;
  EXPECT_NE(ok.out.find("P(s_1 | psi) = 1/3"), std::string::npos);

  auto nulls = cli("prove 1/2 1/2 0 --quiet --output-dir " + dir.string());
  EXPECT_EQ(nulls.status, 0);
  auto chain = nlohmann::json::parse(slurp(dir / "proof.json"));
  bool merged = false;
  for (const auto& s : chain["steps"]) merged = merged || s["kind"] == "MergeNullTerms";
  EXPECT_TRUE(merged);
  EXPECT_EQ(chain["conclusion"][2]["probability"], "0");

  auto trivial = cli("prove 1 --quiet --output-dir " + dir.string());
  EXPECT_EQ(trivial.status, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "proof.json"))["steps"].size(), 1u);

  auto bad = cli("prove 1/2 x --output-dir " + dir.string());
  EXPECT_EQ(bad.status, 3);
  auto err = nlohmann::json::parse(bad.err);
  EXPECT_EQ(err["error"]["code"], "ParseError");

  auto unnormalized = cli("prove 1/2 1/3 --output-dir " + dir.string());
  EXPECT_EQ(unnormalized.status, 3);
  EXPECT_EQ(nlohmann::json::parse(unnormalized.err)["error"]["code"], "InvalidState");
  fs::remove_all(dir);
}

TEST(Cli, RunExitCodes) {
  auto dir = scratch("cli-run");
  auto ok = cli("run --experiment nonlocal --noise none --shots 1000 --seed 1 --no-companion "
                "--output-dir " + dir.string());
  EXPECT_EQ(ok.status, 0) << ok.err;
  auto summary = nlohmann::json::parse(ok.out);
  EXPECT_EQ(summary["all_pass"], true);
  auto report = nlohmann::json::parse(slurp(dir / "nonlocal" / "report.json"));
  EXPECT_NEAR(report["premise1"]["value"].get<double>(), 1.0, 1e-12);
  for (const auto& row : report["premise2"]["comparisons"]) {
    EXPECT_NEAR(row["value"].get<double>(), 1.0, 1e-12);
  }

  auto corrupted = cli("run --experiment local --noise none --seed 1 --no-companion "
                       "--corrupt-environment-swap --output-dir " + dir.string());
  EXPECT_EQ(corrupted.status, 1);

  auto missing_seed = cli("run --experiment local --output-dir " + dir.string());
  EXPECT_EQ(missing_seed.status, 3);
  EXPECT_EQ(nlohmann::json::parse(missing_seed.err)["error"]["code"], "UsageError");

  auto bad_experiment = cli("run --experiment global --seed 1 --output-dir " + dir.string());
  EXPECT_EQ(bad_experiment.status, 3);
  EXPECT_EQ(nlohmann::json::parse(bad_experiment.err)["error"]["code"], "ParseError");

  auto few_resamples = cli("run --experiment local --seed 1 --resamples 10 --output-dir " +
                           dir.string());
  EXPECT_EQ(few_resamples.status, 3);
  EXPECT_EQ(nlohmann::json::parse(few_resamples.err)["error"]["code"], "InvalidArgument");
  fs::remove_all(dir);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  auto dir = scratch("cli-env");
  auto r = cli("prove 1/2 1/2 --quiet", "ENVLAB_OUTPUT_DIR=" + dir.string());
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "proof.json"));
  auto flag = scratch("cli-flag");
  r = cli("prove 1/2 1/2 --quiet --output-dir " + flag.string(),
          "ENVLAB_OUTPUT_DIR=" + dir.string());
  EXPECT_TRUE(fs::exists(flag / "proof.json"));
  fs::remove_all(dir);
  fs::remove_all(flag);
}

TEST(Cli, TomoAndCompare) {
  auto dir = scratch("cli-tomo");
  auto run = cli("run --experiment local --seed 3 --no-companion --output-dir " + dir.string());
  ASSERT_EQ(run.status, 0) << run.err;
  fs::path counts = dir / "local" / "counts";

  auto tomo = cli("tomo " + (counts / "full_original.csv").string());
  EXPECT_EQ(tomo.status, 0) << tomo.err;
  auto rho = nlohmann::json::parse(tomo.out);
  EXPECT_EQ(rho["matrix"].size(), 4u);
  auto linear = cli("tomo --method linear --clip --output " + (dir / "rho.json").string() + " " +
                    (counts / "reduced_original.csv").string());
  EXPECT_EQ(linear.status, 0) << linear.err;
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "rho.json"))["matrix"].size(), 2u);
  EXPECT_EQ(cli("tomo --method bayes " + (counts / "full_original.csv").string()).status, 3);
  EXPECT_EQ(cli("tomo " + (dir / "absent.csv").string()).status, 3);

  auto same = cli("compare --seed 1 " + (counts / "full_original.csv").string() + " " +
                  (counts / "full_twice_swapped.csv").string());
  EXPECT_EQ(same.status, 0) << same.err;
  auto b = nlohmann::json::parse(same.out);
  EXPECT_GE(b["bhattacharyya"].get<double>(), 0.99);
  EXPECT_GT(b["sigma"].get<double>(), 0.0);

  auto mismatch = cli("compare --seed 1 " + (counts / "full_original.csv").string() + " " +
                      (counts / "reduced_original.csv").string());
  EXPECT_EQ(mismatch.status, 3);
  EXPECT_EQ(nlohmann::json::parse(mismatch.err)["error"]["code"], "IncomparableRecords");
  fs::remove_all(dir);
}
