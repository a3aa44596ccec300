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

#ifndef DDGC_HARNESS_H_
#define DDGC_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ddgc/baselines.h"
#include "ddgc/ddgc.h"
#include "ddgc/envs.h"
#include "ddgc/mdp.h"
#include "ddgc/point_mass.h"

namespace ddgc {

// Version of the metrics/summary/distribution CSV layouts and the manifest.
inline constexpr int kSchemaVersion = 1;

// Column names of metrics.csv, in order.
const std::vector<std::string>& MetricsColumns();
const std::vector<std::string>& SummaryColumns();
const std::vector<std::string>& DistributionColumns();
const std::vector<std::string>& ComparisonColumns();

enum class Algorithm { kDdgc, kDdgcExact, kDdgcContinuous, kQCount, kRandom, kSmm };

Algorithm ParseAlgorithm(const std::string& name);
std::string ToString(Algorithm algorithm);

struct EnvironmentSpec {
  // figure1 | discounting_conflict | dynamics_conflict | random | point_mass,
  // or empty when `file` names an MDP definition file.
  std::string builtin;
  std::filesystem::path file;
  std::optional<double> gamma;
  RandomMdpOptions random;
  PointMassEnv::Options point_mass;

  bool continuous() const { return builtin == "point_mass"; }
  // Short label used in comparison tables.
  std::string Label() const;
};

// Builds a discrete environment; throws ConfigError for continuous specs or
// unreadable files.
DiscreteMdp MakeDiscreteEnvironment(const EnvironmentSpec& spec);
PointMassEnv MakeContinuousEnvironment(const EnvironmentSpec& spec);

struct EvalSettings {
  int N_T = 100;
  int H = 60;
};

struct ExperimentConfig {
  std::string name = "experiment";
  EnvironmentSpec environment;
  Algorithm algorithm = Algorithm::kDdgc;
  DdgcConfig ddgc;
  QLearningOptions qlearning;
  SmmConfig smm;
  std::vector<std::uint64_t> seeds{0};
  std::filesystem::path output_dir = "results";
  EvalSettings eval;
};

// Strict parser: unknown keys, bad types and out-of-range values raise
// ConfigError naming the offending field. Relative file paths resolve against
// `base_dir`.
ExperimentConfig ParseExperimentConfig(const nlohmann::json& j,
                                       const std::filesystem::path& base_dir);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);
// Fully resolved configuration, echoed into the manifest.
nlohmann::json ToJson(const ExperimentConfig& config);

struct IterationMetrics {
  int iteration = 0;
  double objective_f = 0.0;
  double return_jgamma = 0.0;
  double partial_entropy = 0.0;
  double modified_partial_gini = 0.0;
  // "exact" or "empirical".
  std::string source;
};

struct MetricsRecord {
  std::uint64_t seed = 0;
  std::vector<IterationMetrics> iterations;
  // Per state (discrete) or per grid cell (continuous).
  std::vector<bool> goal;
  std::vector<double> exact_d;  // empty when no exact oracle exists
  std::vector<double> empirical_d;
  // Flattened trace rows (iteration, field, index, value) for DDGC runs.
  std::vector<IterationRecord> trace;
  double wall_time_seconds = 0.0;

  const IterationMetrics& Final() const { return iterations.back(); }
};

MetricsRecord RunSeed(const ExperimentConfig& config, std::uint64_t seed);

// Runs every seed, `jobs` at a time. Records come back in seed order and do
// not depend on `jobs`.
std::vector<MetricsRecord> RunExperiment(const ExperimentConfig& config,
                                         int jobs = 1);

std::string MetricsCsv(const std::vector<MetricsRecord>& records);
std::string EmitDistributionTable(const MetricsRecord& record);
std::string TraceCsv(const MetricsRecord& record);

struct SummaryRow {
  std::string algorithm;
  std::string metric;
  double mean = 0.0;
  double stddev = 0.0;
  int n = 0;
};

// Mean and sample standard deviation of the final metrics across seeds.
std::vector<SummaryRow> Summarize(const ExperimentConfig& config,
                                  const std::vector<MetricsRecord>& records);
std::string SummaryCsv(const std::vector<SummaryRow>& rows);

// Writes metrics.csv, summary.csv, distribution_<seed>.csv, trace_<seed>.csv
// (DDGC runs), manifest.json and timing.json into `dir`. Everything except
// timing.json is a pure function of the config.
void WriteExperimentOutputs(const ExperimentConfig& config,
                            const std::vector<MetricsRecord>& records,
                            const std::filesystem::path& dir);

struct ComparisonRow {
  std::string environment;
  std::string algorithm;
  std::string metric;
  double value = 0.0;
  double normalized = 0.0;
};

// One row per (environment, algorithm, metric) holding the seed mean and its
// per-environment normalization, which maps the best algorithm to 1.
std::vector<ComparisonRow> CompareAlgorithms(
    const std::vector<std::pair<ExperimentConfig, std::vector<MetricsRecord>>>&
        runs);
std::string ComparisonCsv(const std::vector<ComparisonRow>& rows);

// Shortest round-trip decimal form, used for every number in the outputs.
std::string FormatDouble(double value);

}  // namespace ddgc

#endif  // DDGC_HARNESS_H_
