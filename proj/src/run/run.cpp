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

#include "envlab/run.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>

#include "envlab/born.hpp"
#include "envlab/density_json.hpp"
#include "envlab/error.hpp"
#include "envlab/experiment.hpp"

namespace envlab {
namespace {

// Stream ids under the run seed.
constexpr std::uint64_t kVerdictStream = 0x100;
constexpr std::uint64_t kCompanionStream = 0x200;
constexpr std::uint64_t kJitterStream = 0x300;

std::uint64_t acquisition_stream(std::size_t config, ProjectorMode mode) {
  return 16 * config + static_cast<std::uint64_t>(mode) + 1;
}

struct Acquired {
  CountTable full;
  CountTable reduced;
  std::optional<CountTable> conditional;
};

CountTable acquire(const DensityMatrix& rho, ProjectorMode mode, const RunConfig& config,
                   std::size_t k) {
  auto probs = born_probabilities(rho, tomography_projectors(mode, rho.space()));
  probs.provenance.experiment = config.experiment;
  probs.provenance.swap = kAllSwapConfigs[k];
  probs.provenance.mode = mode;
  return sample_counts(probs, config.shots_per_setting, config.noise,
                       mix_seed(*config.seed, acquisition_stream(k, mode)));
}

Acquired acquire_config(const Ket& prepared, const RunConfig& config, std::size_t k,
                        const PlateErrors& errors) {
  SwapOptions options;
  options.system_plate_error = errors.system;
  options.environment_plate_error = errors.environment;
  options.corrupt_environment_swap = config.corrupt_environment_swap;
  Ket psi = apply_swap_config(prepared, config.experiment, kAllSwapConfigs[k], options);
  DensityMatrix rho = density_of(psi);
  DensityMatrix reduced = partial_trace(rho, {roles(config.experiment).system});

  Acquired out;
  out.full = acquire(rho, ProjectorMode::FullJoint36, config, k);
  out.reduced = acquire(reduced, ProjectorMode::ReducedSingle6, config, k);
  if (k == 0) out.conditional = acquire(rho, ProjectorMode::ConditionalCircular4, config, k);
  return out;
}

std::string config_name(std::size_t k) { return std::string(to_string(kAllSwapConfigs[k])); }

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) fail(ErrorCode::Io, "failed writing " + path.string());
  written.push_back(path.string());
}

bool wants(const RunConfig& config, const std::string& format) {
  return std::find(config.report_formats.begin(), config.report_formats.end(), format) !=
         config.report_formats.end();
}

}  // namespace

void RunConfig::validate() const {
  if (!seed) fail(ErrorCode::InvalidArgument, "a seed is required");
  if (shots_per_setting < 1) fail(ErrorCode::InvalidArgument, "shots must be >= 1");
  if (resamples < 100) fail(ErrorCode::InvalidArgument, "resamples must be >= 100");
  if (companion && companion_resamples < 2) {
    fail(ErrorCode::InvalidArgument, "companion resamples must be >= 2");
  }
  noise.validate();
  for (const auto& f : report_formats) {
    if (f != "json" && f != "csv" && f != "text") {
      fail(ErrorCode::InvalidArgument, "unknown report format '" + f + "'");
    }
  }
}

nlohmann::json RunConfig::to_json() const {
  // output_dir is where the artifacts land, not a property of them, so it is
  // left out to keep reports comparable across directories.
  return {{"experiment", std::string(to_string(experiment))},
          {"shots_per_setting", shots_per_setting},
          {"noise",
           {{"spec", noise_to_string(noise)},
            {"shot_noise", noise.shot_noise},
            {"efficiency", noise.efficiency},
            {"background_rate", noise.background_rate},
            {"unitary_jitter", noise.unitary_jitter}}},
          {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
          {"resamples", resamples},
          {"report_formats", report_formats},
          {"parallel", parallel},
          {"policy",
           {{"threshold", policy.threshold}, {"sigma_multiplier", policy.sigma_multiplier}}},
          {"corrupt_environment_swap", corrupt_environment_swap},
          {"companion", companion},
          {"companion_resamples", companion_resamples}};
}

NoiseModel parse_noise(const std::string& text) {
  if (text == "none") return NoiseModel::none();
  if (text == "shot") return NoiseModel{};
  const std::string prefix = "shot+jitter=";
  if (text.rfind(prefix, 0) == 0) {
    std::string value = text.substr(prefix.size());
    std::size_t used = 0;
    double jitter = 0.0;
    try {
      jitter = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !(jitter >= 0.0)) {
      fail(ErrorCode::ParseError, "bad jitter in noise spec '" + text + "'");
    }
    NoiseModel n;
    n.unitary_jitter = jitter;
    return n;
  }
  fail(ErrorCode::ParseError, "noise must be none, shot or shot+jitter=<rad>, got '" + text + "'");
}

std::string noise_to_string(const NoiseModel& noise) {
  if (!noise.shot_noise) return "none";
  if (noise.unitary_jitter > 0.0) return "shot+jitter=" + format_number(noise.unitary_jitter);
  return "shot";
}

RunResult simulate(const RunConfig& config) {
  config.validate();
  RunResult result;
  result.config = config;
  result.record.experiment = config.experiment;

  if (config.noise.unitary_jitter > 0.0) {
    for (std::size_t k = 0; k < 4; ++k) {
      std::mt19937_64 rng(mix_seed(*config.seed, kJitterStream + k));
      std::normal_distribution<double> angle(0.0, config.noise.unitary_jitter);
      result.plate_errors[k].system = angle(rng);
      result.plate_errors[k].environment = angle(rng);
    }
  }

  const Ket prepared = prepare(config.experiment);
  std::array<Acquired, 4> acquired;
  auto job = [&](std::size_t k) {
    return acquire_config(prepared, config, k, result.plate_errors[k]);
  };
  if (config.parallel) {
    std::vector<std::future<Acquired>> futures;
    for (std::size_t k = 0; k < 4; ++k) futures.push_back(std::async(std::launch::async, job, k));
    for (std::size_t k = 0; k < 4; ++k) acquired[k] = futures[k].get();
  } else {
    for (std::size_t k = 0; k < 4; ++k) acquired[k] = job(k);
  }
  for (std::size_t k = 0; k < 4; ++k) {
    result.record.full[k] = std::move(acquired[k].full);
    result.record.reduced[k] = std::move(acquired[k].reduced);
  }
  result.record.conditional = std::move(acquired[0].conditional);

  VerdictOptions verdicts{config.resamples, mix_seed(*config.seed, kVerdictStream), config.policy,
                          config.parallel};
  std::optional<CompanionOptions> companion;
  if (config.companion) {
    companion = CompanionOptions{};
    companion->resamples = config.companion_resamples;
    companion->seed = mix_seed(*config.seed, kCompanionStream);
  }
  result.report = premise_report(result.record, verdicts, companion);

  auto invert = [](const CountTable& t) {
    return linear_inversion(t, record_projectors(t), /*clip=*/true);
  };
  for (std::size_t k : {0, 3}) {
    result.linear_states.emplace_back("full_" + config_name(k) + "_linear",
                                      invert(*result.record.full[k]));
  }
  for (std::size_t k = 0; k < 4; ++k) {
    result.linear_states.emplace_back("reduced_" + config_name(k) + "_linear",
                                      invert(*result.record.reduced[k]));
  }
  return result;
}

std::vector<std::string> write_artifacts(const RunResult& result) {
  namespace fs = std::filesystem;
  const auto& config = result.config;
  fs::path root = fs::path(config.output_dir) / std::string(to_string(config.experiment));
  std::error_code ec;
  fs::create_directories(root / "counts", ec);
  if (!ec) fs::create_directories(root / "density", ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + root.string() + ": " + ec.message());

  std::vector<std::string> written;
  for (std::size_t k = 0; k < 4; ++k) {
    write_file(root / "counts" / ("full_" + config_name(k) + ".csv"),
               to_csv(*result.record.full[k]), written);
    write_file(root / "counts" / ("reduced_" + config_name(k) + ".csv"),
               to_csv(*result.record.reduced[k]), written);
  }
  write_file(root / "counts" / "conditional_original.csv", to_csv(*result.record.conditional),
             written);

  auto write_density = [&](const std::string& name, const DensityMatrix& rho) {
    write_file(root / "density" / (name + ".json"), density_to_json(rho).dump(2) + "\n", written);
  };
  for (const auto& [name, rho] : result.linear_states) write_density(name, rho);
  if (result.report.companion) {
    for (const auto& [name, rho] : result.report.companion->states) write_density(name, rho);
  }

  if (wants(config, "json")) {
    write_file(root / "report.json", report_to_json(result.report, config.to_json()).dump(2) + "\n",
               written);
  }
  if (wants(config, "csv")) write_file(root / "report.csv", report_to_csv(result.report), written);
  if (wants(config, "text")) write_file(root / "report.txt", report_to_text(result.report), written);
  return written;
}

RunResult run_experiment(const RunConfig& config) {
  RunResult result = simulate(config);
  if (!config.output_dir.empty()) write_artifacts(result);
  return result;
}

ProverRun run_prover(const std::vector<std::string>& weights, const std::string& output_dir,
                     const std::string& stem) {
  if (weights.empty()) fail(ErrorCode::InvalidArgument, "no weights given");
  std::vector<prover::Rational> q;
  for (const auto& w : weights) q.push_back(prover::parse_rational(w));
  auto psi = prover::RationalSchmidtState::from_weights(q);

  ProverRun run;
  run.chain = prover::derive_born_probabilities(psi);
  run.verification = prover::verify(run.chain);
  if (!output_dir.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) fail(ErrorCode::Io, "cannot create " + output_dir + ": " + ec.message());
    write_file(fs::path(output_dir) / (stem + ".json"),
               prover::chain_to_json(run.chain).dump(2) + "\n", run.files);
    write_file(fs::path(output_dir) / (stem + ".txt"), prover::pretty_print(run.chain), run.files);
  }
  return run;
}

}  // namespace envlab
