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

// Command-line front end: run, prove, tomo, compare.
//
// Exit codes: 0 success (and, for `run`, every premise passed), 1 a premise
// failed, 2 the proof verifier rejected a chain, 3 any error. Errors are
// written to stderr as {"error": {"code": ..., "message": ...}}.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "envlab/analysis.hpp"
#include "envlab/density_json.hpp"
#include "envlab/error.hpp"
#include "envlab/run.hpp"

namespace {

constexpr int kPremiseFailed = 1;
constexpr int kProofRejected = 2;
constexpr int kError = 3;

int report_error(const std::string& code, const std::string& message) {
  nlohmann::json j = {{"error", {{"code", code}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
  return kError;
}

std::string resolve_output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ENVLAB_OUTPUT_DIR"); env && *env) return env;
  return "envlab-out";
}

envlab::CountTable load_counts(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) envlab::fail(envlab::ErrorCode::Io, "cannot read " + path);
  return envlab::read_csv(in);
}

std::vector<std::string> split_formats(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Envariance experiments, premise verdicts and Born-rule proofs"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "simulate an experiment and report the premise verdicts");
  std::string experiment;
  std::int64_t shots = 10000;
  std::uint64_t seed = 0;
  std::string noise = "shot";
  double efficiency = 1.0;
  double background = 0.0;
  int resamples = 1000;
  std::string output_dir;
  std::string formats = "json,csv,text";
  bool parallel = false;
  bool corrupt = false;
  bool no_companion = false;
  int companion_resamples = 50;
  double threshold = 0.99;
  double sigma_multiplier = 3.0;
  run->add_option("--experiment", experiment, "local or nonlocal")->required();
  run->add_option("--shots", shots, "shots per measurement setting")->capture_default_str();
  run->add_option("--seed", seed, "random seed (required)")->required();
  run->add_option("--noise", noise, "none | shot | shot+jitter=<rad>")->capture_default_str();
  run->add_option("--efficiency", efficiency, "detection efficiency")->capture_default_str();
  run->add_option("--background", background, "background counts per projector")
      ->capture_default_str();
  run->add_option("--resamples", resamples, "bootstrap resamples")->capture_default_str();
  run->add_option("--output-dir", output_dir, "output directory (else $ENVLAB_OUTPUT_DIR)");
  run->add_option("--formats", formats, "report formats")->capture_default_str();
  run->add_flag("--parallel", parallel, "acquire and bootstrap on several threads");
  run->add_flag("--corrupt-environment-swap", corrupt,
                "negative control: replace the environment swap by a phase gate");
  run->add_flag("--no-companion", no_companion, "skip tomographic companion metrics");
  run->add_option("--companion-resamples", companion_resamples)->capture_default_str();
  run->add_option("--threshold", threshold, "verdict threshold")->capture_default_str();
  run->add_option("--sigma-multiplier", sigma_multiplier)->capture_default_str();

  // prove
  auto* prove = app.add_subcommand("prove", "derive Born probabilities for squared amplitudes");
  std::vector<std::string> weights;
  std::string prove_dir;
  std::string stem = "proof";
  bool quiet = false;
  prove->add_option("weights", weights, "squared amplitudes, e.g. 2/3 1/3")->required();
  prove->add_option("--output-dir", prove_dir, "output directory (else $ENVLAB_OUTPUT_DIR)");
  prove->add_option("--stem", stem, "file name stem")->capture_default_str();
  prove->add_flag("--quiet", quiet, "do not print the chain");

  // tomo
  auto* tomo = app.add_subcommand("tomo", "reconstruct a density matrix from a count CSV");
  std::string tomo_input;
  std::string method = "mle";
  bool clip = false;
  std::string tomo_output;
  tomo->add_option("counts", tomo_input, "count table CSV")->required();
  tomo->add_option("--method", method, "mle | linear")->capture_default_str();
  tomo->add_flag("--clip", clip, "clip negative eigenvalues of the linear estimate");
  tomo->add_option("--output", tomo_output, "write the density JSON here instead of stdout");

  // compare
  auto* compare = app.add_subcommand("compare", "Bhattacharyya coefficient of two count CSVs");
  std::string first;
  std::string second;
  int compare_resamples = 1000;
  std::uint64_t compare_seed = 0;
  compare->add_option("first", first)->required();
  compare->add_option("second", second)->required();
  compare->add_option("--resamples", compare_resamples)->capture_default_str();
  compare->add_option("--seed", compare_seed, "random seed (required)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", e.what());
  }

  try {
    if (*run) {
      envlab::RunConfig config;
      config.experiment = envlab::parse_experiment(experiment);
      config.shots_per_setting = shots;
      config.seed = seed;
      config.noise = envlab::parse_noise(noise);
      config.noise.efficiency = efficiency;
      config.noise.background_rate = background;
      config.resamples = resamples;
      config.output_dir = resolve_output_dir(output_dir);
      config.report_formats = split_formats(formats);
      config.parallel = parallel;
      config.corrupt_environment_swap = corrupt;
      config.companion = !no_companion;
      config.companion_resamples = companion_resamples;
      config.policy = {threshold, sigma_multiplier};
      auto result = envlab::simulate(config);
      auto files = envlab::write_artifacts(result);
      const auto& v = result.report.verdicts;
      nlohmann::json summary = {{"experiment", experiment},
                                {"premise1", v.premise1_pass},
                                {"premise2", v.premise2_pass},
                                {"premise3", v.premise3_pass},
                                {"all_pass", v.all_pass()},
                                {"files", files}};
      std::cout << summary.dump(2) << "\n";
      return v.all_pass() ? 0 : kPremiseFailed;
    }
    if (*prove) {
      std::string dir = resolve_output_dir(prove_dir);
      auto result = envlab::run_prover(weights, dir, stem);
      if (!quiet) std::cout << envlab::prover::pretty_print(result.chain);
      if (!result.verification.accepted) {
        nlohmann::json j = {{"verified", false}, {"reason", result.verification.reason}};
        std::cerr << j.dump() << "\n";
        return kProofRejected;
      }
      return 0;
    }
    if (*tomo) {
      auto counts = load_counts(tomo_input);
      envlab::ReconstructionOptions options;
      if (method == "linear") {
        options.method = envlab::ReconstructionMethod::LinearInversion;
      } else if (method != "mle") {
        envlab::fail(envlab::ErrorCode::InvalidArgument, "method must be mle or linear");
      }
      options.clip = clip;
      auto rho = envlab::reconstruct(counts, envlab::record_projectors(counts), options);
      std::string text = envlab::density_to_json(rho).dump(2) + "\n";
      if (tomo_output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(tomo_output, std::ios::binary | std::ios::trunc);
        if (!(out << text)) envlab::fail(envlab::ErrorCode::Io, "cannot write " + tomo_output);
      }
      return 0;
    }
    if (*compare) {
      auto a = load_counts(first);
      auto b = load_counts(second);
      auto e = envlab::bhattacharyya_with_uncertainty(a, b, compare_resamples, compare_seed);
      nlohmann::json j = {{"bhattacharyya", e.value},
                          {"sigma", e.sigma},
                          {"one_minus_value", 1.0 - e.value},
                          {"resamples", compare_resamples},
                          {"seed", compare_seed}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const envlab::Error& e) {
    return report_error(std::string(envlab::to_string(e.code())), e.what());
  } catch (const std::exception& e) {
    return report_error("Internal", e.what());
  }
  return kError;
}
