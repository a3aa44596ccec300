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

#include "ddgc/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "ddgc/estimator.h"
#include "ddgc/exact.h"
#include "ddgc/mdp_io.h"
#include "ddgc/sampling.h"

namespace ddgc {
namespace {

using nlohmann::json;

// Stream id for evaluation rollouts under a run seed.
constexpr std::uint64_t kEvalStream = 0xE7A1;

// Reads fields from one JSON object and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where)
      : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool Has(const std::string& key) const { return j_.contains(key); }

  template <typename T>
  void Read(const std::string& key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where_ + "." + key + ": wrong type");
    }
  }

  template <typename T>
  void Read(const std::string& key, std::optional<T>& out) {
    T value{};
    if (!j_.contains(key)) {
      seen_.insert(key);
      return;
    }
    Read(key, value);
    out = value;
  }

  // Caller checks Has(key) first.
  const json& Sub(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void Finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) {
        throw ConfigError(where_ + ": unknown key '" + key + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void Require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

EnvironmentSpec ParseEnvironment(const json& j,
                                 const std::filesystem::path& base_dir) {
  ObjectReader r(j, "environment");
  EnvironmentSpec spec;
  std::string file;
  r.Read("builtin", spec.builtin);
  r.Read("file", file);
  r.Read("gamma", spec.gamma);
  Require(spec.builtin.empty() != file.empty(),
          "environment: exactly one of 'builtin' and 'file' is required");
  if (!file.empty()) {
    spec.file = std::filesystem::path(file).is_absolute()
                    ? std::filesystem::path(file)
                    : base_dir / file;
    Require(std::filesystem::exists(spec.file),
            "environment.file: no such file " + spec.file.string());
  }
  if (spec.builtin == "random") {
    r.Read("num_states", spec.random.num_states);
    r.Read("num_actions", spec.random.num_actions);
    r.Read("num_goals", spec.random.num_goals);
    r.Read("branching", spec.random.branching);
    r.Read("seed", spec.random.seed);
    if (spec.gamma) spec.random.gamma = *spec.gamma;
  } else if (spec.builtin == "point_mass") {
    spec.point_mass = MakeThreeDiscEnv().options();
    if (r.Has("goals")) {
      const json& goals = r.Sub("goals");
      Require(goals.is_array() && !goals.empty(),
              "environment.goals: expected a non-empty array");
      spec.point_mass.goals.clear();
      for (const json& g : goals) {
        ObjectReader gr(g, "environment.goals[]");
        GoalDisc disc;
        gr.Read("center", disc.center);
        gr.Read("radius", disc.radius);
        gr.Finish();
        spec.point_mass.goals.push_back(disc);
      }
    }
    r.Read("dt", spec.point_mass.dt);
    r.Read("noise_sigma", spec.point_mass.noise_sigma);
    r.Read("start", spec.point_mass.start);
    r.Read("seed", spec.point_mass.seed);
    if (spec.gamma) spec.point_mass.gamma = *spec.gamma;
  } else if (!spec.builtin.empty()) {
    static const std::set<std::string> kDiscrete = {
        "figure1", "discounting_conflict", "dynamics_conflict"};
    Require(kDiscrete.count(spec.builtin) > 0,
            "environment.builtin: unknown environment '" + spec.builtin + "'");
  }
  r.Finish();
  return spec;
}

void ParseParams(const json& j, ExperimentConfig& c) {
  ObjectReader r(j, "params");
  DdgcConfig& d = c.ddgc;
  r.Read("K", d.K);
  r.Read("N_T", d.N_T);
  r.Read("H", d.H);
  r.Read("N_FQI", d.N_FQI);
  std::string exploration = ToString(d.exploration);
  r.Read("exploration", exploration);
  d.exploration = ParseExplorationKind(exploration);
  r.Read("exploration_batch_size", d.exploration_batch_size);
  r.Read("discretization_precision", d.discretization_precision);
  std::string convention = ToString(d.estimator_convention);
  r.Read("estimator_convention", convention);
  d.estimator_convention = ParseEstimatorConvention(convention);
  r.Read("goal_buffer_capacity", d.goal_buffer_capacity);
  r.Read("ridge", d.actor_critic.ridge);
  r.Read("policy_steps", d.actor_critic.policy_steps);
  r.Read("learning_rate", d.actor_critic.learning_rate);
  r.Read("rbf_per_dim", d.rbf_per_dim);

  std::optional<std::int64_t> steps;
  r.Read("steps", steps);
  r.Read("alpha", c.qlearning.alpha);
  r.Read("bonus_scale", c.qlearning.bonus_scale);
  r.Read("epsilon_start", c.qlearning.epsilon_start);
  r.Read("epsilon_end", c.qlearning.epsilon_end);
  r.Read("density_floor", c.smm.density_floor);
  r.Finish();

  try {
    d.Validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  // Baselines share the DDGC budget unless told otherwise.
  c.qlearning.horizon = d.H;
  c.qlearning.steps =
      steps.value_or(static_cast<std::int64_t>(d.K) *
                     (d.N_T + d.ExplorationEpisodes()) * d.H);
  Require(c.qlearning.steps >= 0, "params.steps must be >= 0");
  Require(c.qlearning.alpha > 0.0 && c.qlearning.alpha <= 1.0,
          "params.alpha must lie in (0, 1]");
  Require(c.qlearning.bonus_scale >= 0.0, "params.bonus_scale must be >= 0");
  Require(c.smm.density_floor > 0.0, "params.density_floor must be > 0");
  c.smm.N_T = d.N_T;
  c.smm.H = d.H;
  c.smm.N_FQI = d.N_FQI;
  c.smm.exploration_episodes = d.ExplorationEpisodes();
}

std::string JoinCsv(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

IterationMetrics MetricsFromD(int iteration, std::span<const double> d,
                              const std::vector<bool>& goal,
                              std::string source) {
  const ObjectiveReport report = Objective(goal, d);
  const DiversityMetrics m = Metrics(d, goal);
  return {iteration,        report.objective_f,     m.return_jgamma,
          m.partial_entropy, m.modified_partial_gini, std::move(source)};
}

std::vector<double> EmpiricalD(const DiscreteMdp& mdp,
                               const PolicyMixture& mixture,
                               const EvalSettings& eval, std::uint64_t seed) {
  const TrajectoryBatch batch = SampleBatch(
      mdp, mixture, eval.N_T, eval.H, DeriveSeed(seed, kEvalStream));
  return EstimateD(batch, mdp.num_states(), mdp.gamma()).d_hat;
}

MetricsRecord RunDiscreteSeed(const ExperimentConfig& config,
                              std::uint64_t seed) {
  const DiscreteMdp mdp = MakeDiscreteEnvironment(config.environment);
  MetricsRecord record;
  record.seed = seed;
  record.goal = mdp.goal_mask();
  std::optional<PolicyMixture> final_mixture;

  switch (config.algorithm) {
    case Algorithm::kDdgc: {
      DdgcConfig c = config.ddgc;
      c.seed = seed;
      c.track_exact = true;
      DdgcResult result = RunDdgcDiscrete(mdp, c);
      for (const auto& it : result.trace) {
        record.iterations.push_back(
            MetricsFromD(it.iteration, it.exact_d, record.goal, "exact"));
      }
      record.trace = std::move(result.trace);
      final_mixture = std::move(result.mixture);
      break;
    }
    case Algorithm::kDdgcExact: {
      ExactDdgcResult result = RunExactDdgc(mdp, config.ddgc.K);
      for (std::size_t k = 0; k < result.distributions.size(); ++k) {
        record.iterations.push_back(MetricsFromD(
            static_cast<int>(k) + 1, result.distributions[k], record.goal,
            "exact"));
      }
      final_mixture = std::move(result.mixture);
      break;
    }
    case Algorithm::kQCount: {
      QLearningOptions o = config.qlearning;
      o.seed = seed;
      final_mixture = PolicyMixture(QLearningCountBonus(mdp, o).policy);
      break;
    }
    case Algorithm::kRandom:
      final_mixture = PolicyMixture(RandomPolicyEval(mdp).policy);
      break;
    case Algorithm::kSmm: {
      SmmConfig o = config.smm;
      o.seed = seed;
      final_mixture = SmmMixture(mdp, config.ddgc.K, o);
      break;
    }
    case Algorithm::kDdgcContinuous:
      throw ConfigError("ddgc_continuous needs the point_mass environment");
  }

  record.exact_d = ExactDMixture(mdp, *final_mixture).probs;
  if (record.iterations.empty()) {
    const int iteration = config.algorithm == Algorithm::kSmm ? config.ddgc.K : 1;
    record.iterations.push_back(
        MetricsFromD(iteration, record.exact_d, record.goal, "exact"));
  }
  record.empirical_d = EmpiricalD(mdp, *final_mixture, config.eval, seed);
  return record;
}

MetricsRecord RunContinuousSeed(const ExperimentConfig& config,
                                std::uint64_t seed) {
  if (config.algorithm != Algorithm::kDdgcContinuous) {
    throw ConfigError("the point_mass environment supports only ddgc_continuous");
  }
  const PointMassEnv env = MakeContinuousEnvironment(config.environment);
  DdgcConfig c = config.ddgc;
  c.seed = seed;
  ContinuousDdgcResult result = RunDdgcContinuous(env, c);

  const GridDiscretizer grid(c.discretization_precision, 2);
  MetricsRecord record;
  record.seed = seed;
  record.goal.assign(static_cast<std::size_t>(grid.num_cells()), false);
  for (std::int64_t cell = 0; cell < grid.num_cells(); ++cell) {
    const auto center = grid.CellCenter(cell);
    record.goal[static_cast<std::size_t>(cell)] =
        env.IsGoal(Vec2{center[0], center[1]});
  }
  const ContinuousBatch eval =
      SampleContinuousBatch(env, result.mixture, config.eval.N_T, config.eval.H,
                            DeriveSeed(seed, kEvalStream));
  const CellVisitationEstimate estimate = EstimateCellD(
      eval, env.gamma(), [&grid](const Vec2& p) { return grid.Cell(p); });
  record.empirical_d.assign(record.goal.size(), 0.0);
  for (const auto& [cell, mass] : estimate.d_hat) {
    record.empirical_d[static_cast<std::size_t>(cell)] = mass;
  }
  record.iterations.push_back(
      MetricsFromD(c.K, record.empirical_d, record.goal, "empirical"));
  record.trace = std::move(result.trace);
  return record;
}

double Mean(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return v.empty() ? 0.0 : total / static_cast<double>(v.size());
}

double SampleStd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double total = 0.0;
  for (double x : v) total += (x - m) * (x - m);
  return std::sqrt(total / static_cast<double>(v.size() - 1));
}

}  // namespace

const std::vector<std::string>& MetricsColumns() {
  static const std::vector<std::string> kColumns = {
      "seed",           "iteration",       "objective_f",
      "return_jgamma",  "partial_entropy", "modified_partial_gini",
      "source"};
  return kColumns;
}

const std::vector<std::string>& SummaryColumns() {
  static const std::vector<std::string> kColumns = {"algorithm", "metric",
                                                    "mean", "std", "n"};
  return kColumns;
}

const std::vector<std::string>& DistributionColumns() {
  static const std::vector<std::string> kColumns = {"state", "goal", "exact_d",
                                                    "empirical_d"};
  return kColumns;
}

const std::vector<std::string>& ComparisonColumns() {
  static const std::vector<std::string> kColumns = {
      "environment", "algorithm", "metric", "value", "normalized"};
  return kColumns;
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "ddgc") return Algorithm::kDdgc;
  if (name == "ddgc_exact") return Algorithm::kDdgcExact;
  if (name == "ddgc_continuous") return Algorithm::kDdgcContinuous;
  if (name == "q_count") return Algorithm::kQCount;
  if (name == "random") return Algorithm::kRandom;
  if (name == "smm") return Algorithm::kSmm;
  throw ConfigError("unknown algorithm '" + name + "'");
}

std::string ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kDdgc:
      return "ddgc";
    case Algorithm::kDdgcExact:
      return "ddgc_exact";
    case Algorithm::kDdgcContinuous:
      return "ddgc_continuous";
    case Algorithm::kQCount:
      return "q_count";
    case Algorithm::kRandom:
      return "random";
    case Algorithm::kSmm:
      return "smm";
  }
  return "ddgc";
}

std::string EnvironmentSpec::Label() const {
  if (!builtin.empty()) return builtin;
  return file.stem().string();
}

DiscreteMdp MakeDiscreteEnvironment(const EnvironmentSpec& spec) {
  if (spec.continuous()) {
    throw ConfigError("environment '" + spec.builtin + "' is continuous");
  }
  if (!spec.file.empty()) {
    DiscreteMdp mdp = LoadMdpFile(spec.file.string());
    return spec.gamma ? mdp.WithGamma(*spec.gamma) : mdp;
  }
  try {
    if (spec.builtin == "figure1") return MakeFigure1Mdp(spec.gamma.value_or(0.95));
    if (spec.builtin == "discounting_conflict") {
      return MakeDiscountingConflictMdp(spec.gamma.value_or(0.9));
    }
    if (spec.builtin == "dynamics_conflict") {
      return MakeDynamicsConflictMdp(spec.gamma.value_or(0.999));
    }
    if (spec.builtin == "random") return MakeRandomMdp(spec.random);
  } catch (const InvalidArgument& e) {
    throw ConfigError("environment: " + std::string(e.what()));
  }
  throw ConfigError("unknown environment '" + spec.builtin + "'");
}

PointMassEnv MakeContinuousEnvironment(const EnvironmentSpec& spec) {
  if (!spec.continuous()) {
    throw ConfigError("environment '" + spec.Label() + "' is not continuous");
  }
  try {
    return PointMassEnv(spec.point_mass);
  } catch (const InvalidArgument& e) {
    throw ConfigError("environment: " + std::string(e.what()));
  }
}

ExperimentConfig ParseExperimentConfig(const nlohmann::json& j,
                                       const std::filesystem::path& base_dir) {
  ObjectReader r(j, "config");
  ExperimentConfig c;
  int version = kSchemaVersion;
  r.Read("schema_version", version);
  Require(version == kSchemaVersion,
          "config.schema_version: unsupported version " + std::to_string(version));
  r.Read("name", c.name);
  Require(!c.name.empty(), "config.name must be non-empty");
  Require(r.Has("environment"), "config.environment is required");
  c.environment = ParseEnvironment(r.Sub("environment"), base_dir);
  std::string algorithm = ToString(c.algorithm);
  r.Read("algorithm", algorithm);
  c.algorithm = ParseAlgorithm(algorithm);
  Require(c.environment.continuous() == (c.algorithm == Algorithm::kDdgcContinuous),
          "config: ddgc_continuous runs exactly on the point_mass environment");
  ParseParams(r.Has("params") ? r.Sub("params") : json::object(), c);
  r.Read("seeds", c.seeds);
  Require(!c.seeds.empty(), "config.seeds must be non-empty");
  std::string output_dir = c.output_dir.string();
  r.Read("output_dir", output_dir);
  c.output_dir = output_dir;
  if (r.Has("eval")) {
    ObjectReader e(r.Sub("eval"), "eval");
    e.Read("N_T", c.eval.N_T);
    e.Read("H", c.eval.H);
    e.Finish();
  }
  Require(c.eval.N_T >= 1 && c.eval.H >= 1, "eval.N_T and eval.H must be >= 1");
  r.Finish();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  try {
    return ParseExperimentConfig(j, path.parent_path());
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
}

nlohmann::json ToJson(const ExperimentConfig& c) {
  json env;
  if (!c.environment.file.empty()) {
    env["file"] = c.environment.file.string();
  } else {
    env["builtin"] = c.environment.builtin;
  }
  if (c.environment.gamma) env["gamma"] = *c.environment.gamma;
  if (c.environment.builtin == "random") {
    env["num_states"] = c.environment.random.num_states;
    env["num_actions"] = c.environment.random.num_actions;
    env["num_goals"] = c.environment.random.num_goals;
    env["branching"] = c.environment.random.branching;
    env["seed"] = c.environment.random.seed;
  }
  if (c.environment.continuous()) {
    const auto& pm = c.environment.point_mass;
    json goals = json::array();
    for (const auto& g : pm.goals) {
      goals.push_back({{"center", g.center}, {"radius", g.radius}});
    }
    env["goals"] = goals;
    env["dt"] = pm.dt;
    env["noise_sigma"] = pm.noise_sigma;
    env["start"] = pm.start;
    env["seed"] = pm.seed;
  }
  const DdgcConfig& d = c.ddgc;
  json params = {
      {"K", d.K},
      {"N_T", d.N_T},
      {"H", d.H},
      {"N_FQI", d.N_FQI},
      {"exploration", ToString(d.exploration)},
      {"exploration_batch_size", d.ExplorationEpisodes()},
      {"discretization_precision", d.discretization_precision},
      {"estimator_convention", ToString(d.estimator_convention)},
      {"goal_buffer_capacity", d.goal_buffer_capacity},
      {"ridge", d.actor_critic.ridge},
      {"policy_steps", d.actor_critic.policy_steps},
      {"learning_rate", d.actor_critic.learning_rate},
      {"rbf_per_dim", d.rbf_per_dim},
      {"steps", c.qlearning.steps},
      {"alpha", c.qlearning.alpha},
      {"bonus_scale", c.qlearning.bonus_scale},
      {"epsilon_start", c.qlearning.epsilon_start},
      {"epsilon_end", c.qlearning.epsilon_end},
      {"density_floor", c.smm.density_floor}};
  return {{"schema_version", kSchemaVersion},
          {"name", c.name},
          {"environment", env},
          {"algorithm", ToString(c.algorithm)},
          {"params", params},
          {"seeds", c.seeds},
          {"output_dir", c.output_dir.string()},
          {"eval", {{"N_T", c.eval.N_T}, {"H", c.eval.H}}}};
}

MetricsRecord RunSeed(const ExperimentConfig& config, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  MetricsRecord record = config.environment.continuous()
                             ? RunContinuousSeed(config, seed)
                             : RunDiscreteSeed(config, seed);
  record.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return record;
}

std::vector<MetricsRecord> RunExperiment(const ExperimentConfig& config,
                                         int jobs) {
  const std::size_t n = config.seeds.size();
  std::vector<std::optional<MetricsRecord>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i] = RunSeed(config, config.seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers =
      std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  std::vector<MetricsRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    records.push_back(std::move(*slots[i]));
  }
  return records;
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string MetricsCsv(const std::vector<MetricsRecord>& records) {
  std::string out = JoinCsv(MetricsColumns());
  for (const auto& r : records) {
    for (const auto& m : r.iterations) {
      out += JoinCsv({std::to_string(r.seed), std::to_string(m.iteration),
                      FormatDouble(m.objective_f), FormatDouble(m.return_jgamma),
                      FormatDouble(m.partial_entropy),
                      FormatDouble(m.modified_partial_gini), m.source});
    }
  }
  return out;
}

std::string EmitDistributionTable(const MetricsRecord& record) {
  std::string out = JoinCsv(DistributionColumns());
  for (std::size_t s = 0; s < record.goal.size(); ++s) {
    out += JoinCsv({std::to_string(s), record.goal[s] ? "1" : "0",
                    record.exact_d.empty() ? "" : FormatDouble(record.exact_d[s]),
                    FormatDouble(record.empirical_d[s])});
  }
  return out;
}

std::string TraceCsv(const MetricsRecord& record) {
  std::string out = JoinCsv({"iteration", "field", "index", "value"});
  for (const auto& it : record.trace) {
    const std::string k = std::to_string(it.iteration);
    auto rows = [&](const std::string& field, const std::vector<double>& v) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += JoinCsv({k, field, std::to_string(i), FormatDouble(v[i])});
      }
    };
    rows("d_hat", it.d_hat);
    rows("reward", it.reward);
    rows("weight", it.weights);
    out += JoinCsv({k, "policy_index", "0", std::to_string(it.policy_index)});
    if (it.exact_f) out += JoinCsv({k, "exact_f", "0", FormatDouble(*it.exact_f)});
  }
  return out;
}

std::vector<SummaryRow> Summarize(const ExperimentConfig& config,
                                  const std::vector<MetricsRecord>& records) {
  const std::string algorithm = ToString(config.algorithm);
  std::vector<SummaryRow> rows;
  auto add = [&](const std::string& metric, auto getter) {
    std::vector<double> v;
    for (const auto& r : records) v.push_back(getter(r.Final()));
    rows.push_back({algorithm, metric, Mean(v), SampleStd(v),
                    static_cast<int>(v.size())});
  };
  add("objective_f", [](const IterationMetrics& m) { return m.objective_f; });
  add("return_jgamma", [](const IterationMetrics& m) { return m.return_jgamma; });
  add("partial_entropy",
      [](const IterationMetrics& m) { return m.partial_entropy; });
  add("modified_partial_gini",
      [](const IterationMetrics& m) { return m.modified_partial_gini; });
  return rows;
}

std::string SummaryCsv(const std::vector<SummaryRow>& rows) {
  std::string out = JoinCsv(SummaryColumns());
  for (const auto& r : rows) {
    out += JoinCsv({r.algorithm, r.metric, FormatDouble(r.mean),
                    FormatDouble(r.stddev), std::to_string(r.n)});
  }
  return out;
}

void WriteExperimentOutputs(const ExperimentConfig& config,
                            const std::vector<MetricsRecord>& records,
                            const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> files = {"metrics.csv", "summary.csv"};
  WriteFile(dir / "metrics.csv", MetricsCsv(records));
  WriteFile(dir / "summary.csv", SummaryCsv(Summarize(config, records)));
  json timing = json::object();
  for (const auto& r : records) {
    const std::string seed = std::to_string(r.seed);
    files.push_back("distribution_" + seed + ".csv");
    WriteFile(dir / files.back(), EmitDistributionTable(r));
    if (!r.trace.empty()) {
      files.push_back("trace_" + seed + ".csv");
      WriteFile(dir / files.back(), TraceCsv(r));
    }
    json per_iteration = json::array();
    for (const auto& it : r.trace) per_iteration.push_back(it.wall_time_seconds);
    timing[seed] = {{"total_seconds", r.wall_time_seconds},
                    {"iteration_seconds", per_iteration}};
  }
  json manifest = {{"schema_version", kSchemaVersion},
                   {"tool", "ddgc"},
                   {"config", ToJson(config)},
                   {"files", files},
                   {"columns",
                    {{"metrics", MetricsColumns()},
                     {"summary", SummaryColumns()},
                     {"distribution", DistributionColumns()}}},
                   {"nondeterministic_files", {"timing.json"}}};
  WriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
  WriteFile(dir / "timing.json", timing.dump(2) + "\n");
}

std::vector<ComparisonRow> CompareAlgorithms(
    const std::vector<std::pair<ExperimentConfig, std::vector<MetricsRecord>>>&
        runs) {
  std::vector<ComparisonRow> rows;
  for (const auto& [config, records] : runs) {
    for (const auto& s : Summarize(config, records)) {
      rows.push_back({config.environment.Label(), s.algorithm, s.metric, s.mean,
                      0.0});
    }
  }
  // Best value per (environment, metric); higher is better for every metric.
  std::map<std::pair<std::string, std::string>, double> best;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.environment, r.metric);
    auto it = best.find(key);
    if (it == best.end() || r.value > it->second) best[key] = r.value;
  }
  for (auto& r : rows) {
    const double b = best[{r.environment, r.metric}];
    if (b > 0.0) {
      r.normalized = r.value / b;
    } else if (r.value < 0.0) {
      // Non-positive metrics (the modified Gini): best / value keeps the
      // best at 1 and shrinks worse values toward 0.
      r.normalized = b / r.value;
    } else {
      r.normalized = 1.0;
    }
  }
  return rows;
}

std::string ComparisonCsv(const std::vector<ComparisonRow>& rows) {
  std::string out = JoinCsv(ComparisonColumns());
  for (const auto& r : rows) {
    out += JoinCsv({r.environment, r.algorithm, r.metric, FormatDouble(r.value),
                    FormatDouble(r.normalized)});
  }
  return out;
}

}  // namespace ddgc
