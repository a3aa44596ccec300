// Copyright 2026 The DDGC Authors
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

// Command-line front end: run, compare, dump-mdp and oracle.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ddgc/exact.h"
#include "ddgc/harness.h"
#include "ddgc/mdp_io.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct RunFlags {
  std::vector<std::string> configs;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

struct EnvFlags {
  std::string env;
  std::string mdp_file;
  std::string config;
  std::optional<double> gamma;
  std::optional<std::uint64_t> seed;
};

ddgc::ExperimentConfig LoadWithOverrides(const std::string& path,
                                         const RunFlags& flags) {
  ddgc::ExperimentConfig config = ddgc::LoadExperimentConfig(path);
  if (flags.seed) config.seeds = {*flags.seed};
  return config;
}

std::vector<ddgc::MetricsRecord> RunAndWrite(
    const ddgc::ExperimentConfig& config, const std::filesystem::path& dir,
    int jobs) {
  std::vector<ddgc::MetricsRecord> records = ddgc::RunExperiment(config, jobs);
  ddgc::WriteExperimentOutputs(config, records, dir);
  for (const auto& row : ddgc::Summarize(config, records)) {
    std::cout << row.algorithm << ' ' << row.metric << ' '
              << ddgc::FormatDouble(row.mean) << " +- "
              << ddgc::FormatDouble(row.stddev) << '\n';
  }
  std::cout << "wrote " << dir.string() << '\n';
  return records;
}

int RunCommand(const RunFlags& flags) {
  const ddgc::ExperimentConfig config =
      LoadWithOverrides(flags.configs.front(), flags);
  const std::filesystem::path dir =
      flags.output_dir.empty() ? config.output_dir
                               : std::filesystem::path(flags.output_dir);
  RunAndWrite(config, dir, flags.jobs);
  return kExitOk;
}

int CompareCommand(const RunFlags& flags) {
  std::vector<ddgc::ExperimentConfig> configs;
  for (const auto& path : flags.configs) {
    configs.push_back(LoadWithOverrides(path, flags));
  }
  const std::filesystem::path root =
      flags.output_dir.empty() ? std::filesystem::path("comparison")
                               : std::filesystem::path(flags.output_dir);
  std::vector<std::pair<ddgc::ExperimentConfig, std::vector<ddgc::MetricsRecord>>>
      runs;
  for (const auto& config : configs) {
    runs.emplace_back(config, RunAndWrite(config, root / config.name, flags.jobs));
  }
  std::filesystem::create_directories(root);
  const std::string table = ddgc::ComparisonCsv(ddgc::CompareAlgorithms(runs));
  std::ofstream out(root / "comparison.csv", std::ios::binary);
  out << table;
  if (!out) throw ddgc::Error("failed writing comparison.csv");
  std::cout << table;
  return kExitOk;
}

ddgc::DiscreteMdp ResolveMdp(const EnvFlags& flags) {
  const int sources = !flags.env.empty() + !flags.mdp_file.empty() +
                      !flags.config.empty();
  if (sources != 1) {
    throw ddgc::ConfigError("give exactly one of --env, --mdp and --config");
  }
  ddgc::EnvironmentSpec spec;
  if (!flags.config.empty()) {
    spec = ddgc::LoadExperimentConfig(flags.config).environment;
  } else if (!flags.mdp_file.empty()) {
    if (!std::filesystem::exists(flags.mdp_file)) {
      throw ddgc::ConfigError("no such MDP file " + flags.mdp_file);
    }
    spec.file = flags.mdp_file;
  } else {
    spec.builtin = flags.env;
    if (flags.seed) spec.random.seed = *flags.seed;
  }
  if (flags.gamma) {
    spec.gamma = flags.gamma;
    spec.random.gamma = *flags.gamma;
  }
  return ddgc::MakeDiscreteEnvironment(spec);
}

void Emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ddgc::Error("cannot write " + path);
  out << text;
}

int DumpMdpCommand(const EnvFlags& flags, const std::string& output) {
  Emit(ddgc::MdpToJson(ResolveMdp(flags)).dump(2) + "\n", output);
  return kExitOk;
}

int OracleCommand(const EnvFlags& flags, double tolerance,
                  const std::string& output) {
  const ddgc::DiscreteMdp mdp = ResolveMdp(flags);
  const ddgc::OptimalMixture opt =
      ddgc::BruteForceOptimalMixture(mdp, tolerance);
  const ddgc::ObjectiveReport report =
      ddgc::Objective(mdp, ddgc::ExactDMixture(mdp, opt.mixture));
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : opt.mixture.components()) {
    components.push_back({{"weight", c.weight},
                          {"actions", c.policy.ModalActions()}});
  }
  nlohmann::json j = {{"f_star", opt.f_star},
                      {"duality_gap", opt.duality_gap},
                      {"iterations", opt.iterations},
                      {"num_vertices", opt.num_vertices},
                      {"goal_states", mdp.GoalStates()},
                      {"goal_mass", report.per_goal_mass},
                      {"components", components}};
  Emit(j.dump(2) + "\n", output);
  return kExitOk;
}

void AddEnvFlags(CLI::App* cmd, EnvFlags& flags) {
  cmd->add_option("--env", flags.env,
                  "Built-in MDP: figure1, discounting_conflict, "
                  "dynamics_conflict, random");
  cmd->add_option("--mdp", flags.mdp_file, "MDP definition file")
      ->check(CLI::ExistingFile);
  cmd->add_option("-c,--config", flags.config,
                  "Experiment config whose environment is used")
      ->check(CLI::ExistingFile);
  cmd->add_option("--gamma", flags.gamma, "Override the discount");
  cmd->add_option("-s,--seed", flags.seed, "Seed of the random MDP generator");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dense and diverse goal coverage experiments"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("-c,--config", run_flags.configs, "Experiment config (JSON)")
      ->required()
      ->expected(1)
      ->check(CLI::ExistingFile);
  run->add_option("-o,--output-dir", run_flags.output_dir,
                  "Output directory (default: config output_dir)");
  run->add_option("-s,--seed", run_flags.seed, "Run only this seed");
  run->add_option("-j,--jobs", run_flags.jobs, "Seeds run in parallel")
      ->check(CLI::PositiveNumber);

  RunFlags compare_flags;
  CLI::App* compare =
      app.add_subcommand("compare", "Run several configs and normalize metrics");
  compare
      ->add_option("-c,--config", compare_flags.configs,
                   "Experiment configs (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("-o,--output-dir", compare_flags.output_dir,
                      "Output root (default: comparison)");
  compare->add_option("-s,--seed", compare_flags.seed, "Run only this seed");
  compare->add_option("-j,--jobs", compare_flags.jobs, "Seeds run in parallel")
      ->check(CLI::PositiveNumber);

  EnvFlags dump_flags;
  std::string dump_output;
  CLI::App* dump = app.add_subcommand("dump-mdp", "Write an MDP definition file");
  AddEnvFlags(dump, dump_flags);
  dump->add_option("-o,--output", dump_output, "Destination (default: stdout)");

  EnvFlags oracle_flags;
  std::string oracle_output;
  double tolerance = 1e-8;
  CLI::App* oracle =
      app.add_subcommand("oracle", "Brute-force optimal mixture and F*");
  AddEnvFlags(oracle, oracle_flags);
  oracle->add_option("--tolerance", tolerance, "Duality-gap tolerance")
      ->check(CLI::PositiveNumber);
  oracle->add_option("-o,--output", oracle_output,
                     "Destination (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return RunCommand(run_flags);
    if (compare->parsed()) return CompareCommand(compare_flags);
    if (dump->parsed()) return DumpMdpCommand(dump_flags, dump_output);
    if (oracle->parsed()) return OracleCommand(oracle_flags, tolerance, oracle_output);
  } catch (const ddgc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
