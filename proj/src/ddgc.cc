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

#include "ddgc/ddgc.h"

#include <chrono>
#include <cmath>
#include <limits>

#include "ddgc/exact.h"
#include "ddgc/q_table.h"
#include "ddgc/sampling.h"

namespace ddgc {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stream ids under the run seed.
constexpr std::uint64_t kOnPolicyStream = 0;
constexpr std::uint64_t kExplorationStream = 1;

std::uint64_t IterationSeed(std::uint64_t root, int k, std::uint64_t stream) {
  return DeriveSeed(DeriveSeed(root, static_cast<std::uint64_t>(k)), stream);
}

// Least-tried action first, ties broken uniformly. Counts are updated as the
// episode runs so consecutive episodes fan out.
ActionSelector CountBonusSelector(std::vector<std::int64_t>& counts,
                                  int num_actions) {
  return [&counts, num_actions](StateId s, Rng& rng) {
    const std::size_t base = static_cast<std::size_t>(s) * num_actions;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<ActionId> ties;
    for (ActionId a = 0; a < num_actions; ++a) {
      const std::int64_t c = counts[base + a];
      if (c < best) {
        best = c;
        ties.assign(1, a);
      } else if (c == best) {
        ties.push_back(a);
      }
    }
    const ActionId a = ties.size() == 1
                           ? ties[0]
                           : ties[static_cast<std::size_t>(
                                 UniformDouble(rng) * ties.size())];
    ++counts[base + a];
    return a;
  };
}

}  // namespace

ExplorationKind ParseExplorationKind(const std::string& name) {
  if (name == "none") return ExplorationKind::kNone;
  if (name == "random") return ExplorationKind::kRandom;
  if (name == "count_bonus") return ExplorationKind::kCountBonus;
  throw ConfigError("unknown exploration kind '" + name + "'");
}

std::string ToString(ExplorationKind kind) {
  switch (kind) {
    case ExplorationKind::kNone:
      return "none";
    case ExplorationKind::kRandom:
      return "random";
    case ExplorationKind::kCountBonus:
      return "count_bonus";
  }
  return "none";
}

EstimatorConvention ParseEstimatorConvention(const std::string& name) {
  if (name == "alg1") return EstimatorConvention::kNextState;
  if (name == "appendixE") return EstimatorConvention::kVisitedState;
  throw ConfigError("unknown estimator convention '" + name + "'");
}

std::string ToString(EstimatorConvention convention) {
  return convention == EstimatorConvention::kNextState ? "alg1" : "appendixE";
}

void DdgcConfig::Validate() const {
  CheckArgument(K >= 1, "K must be >= 1");
  CheckArgument(N_T >= 1, "N_T must be >= 1");
  CheckArgument(H >= 1, "H must be >= 1");
  CheckArgument(N_FQI >= 1, "N_FQI must be >= 1");
  CheckArgument(!gamma || (*gamma >= 0.0 && *gamma < 1.0),
                "gamma must lie in [0, 1)");
  CheckArgument(exploration_batch_size >= -1,
                "exploration_batch_size must be >= 0 (or -1 for N_T / 4)");
  CheckArgument(discretization_precision >= 1,
                "discretization_precision must be >= 1");
  CheckArgument(goal_buffer_capacity >= 0, "goal_buffer_capacity must be >= 0");
  CheckArgument(rbf_per_dim >= 2, "rbf_per_dim must be >= 2");
}

int DdgcConfig::ExplorationEpisodes() const {
  if (exploration == ExplorationKind::kNone) return 0;
  if (exploration_batch_size >= 0) return exploration_batch_size;
  return std::max(1, N_T / 4);
}

DdgcResult RunDdgcDiscrete(const DiscreteMdp& input_mdp,
                           const DdgcConfig& config) {
  config.Validate();
  const DiscreteMdp mdp =
      config.gamma ? input_mdp.WithGamma(*config.gamma) : input_mdp;
  const int num_states = mdp.num_states();
  const int num_actions = mdp.num_actions();
  const double gamma = mdp.gamma();
  const int explore_episodes = config.ExplorationEpisodes();

  PolicyMixture mixture(TabularPolicy::Uniform(num_states, num_actions));
  std::vector<std::int64_t> counts(
      static_cast<std::size_t>(num_states) * num_actions, 0);
  DdgcResult result{mixture, {}};

  for (int k = 1; k <= config.K; ++k) {
    const auto start = Clock::now();
    const TrajectoryBatch batch =
        SampleBatch(mdp, mixture, config.N_T, config.H,
                    IterationSeed(config.seed, k, kOnPolicyStream));
    const VisitationEstimate estimate =
        EstimateD(batch, num_states, gamma, config.estimator_convention);
    const std::vector<double> reward =
        CustomReward(estimate.d_hat, mdp.goal_mask());

    TrajectoryBatch rl_batch = Relabel(batch, reward);
    if (explore_episodes > 0) {
      const std::uint64_t seed =
          IterationSeed(config.seed, k, kExplorationStream);
      TrajectoryBatch explore;
      if (config.exploration == ExplorationKind::kCountBonus) {
        explore = SampleBatchWith(mdp, CountBonusSelector(counts, num_actions),
                                  explore_episodes, config.H, seed);
      } else {
        const TabularPolicy uniform =
            TabularPolicy::Uniform(num_states, num_actions);
        explore = SampleBatchWith(
            mdp,
            [&uniform](StateId s, Rng& rng) { return uniform.Sample(s, rng); },
            explore_episodes, config.H, seed);
      }
      const TrajectoryBatch relabeled = Relabel(explore, reward);
      rl_batch = MergeBatches({&rl_batch, &relabeled});
    }

    FqiResult fqi =
        FqiTabular(rl_batch, num_states, num_actions, gamma, config.N_FQI);
    mixture = MixtureUpdate(mixture, std::move(fqi.policy), k);

    IterationRecord record;
    record.iteration = k;
    record.d_hat = estimate.d_hat;
    record.reward = reward;
    record.policy_index = static_cast<int>(mixture.size()) - 1;
    record.weights = mixture.weights();
    if (config.track_exact) {
      record.exact_d = ExactDMixture(mdp, mixture).probs;
      record.exact_f = Objective(mdp.goal_mask(), record.exact_d).objective_f;
    }
    record.wall_time_seconds = SecondsSince(start);
    result.trace.push_back(std::move(record));
  }
  result.mixture = std::move(mixture);
  return result;
}

ExactDdgcResult RunExactDdgc(const DiscreteMdp& mdp, int K,
                             std::optional<double> f_star) {
  CheckArgument(K >= 1, "K must be >= 1");
  PolicyMixture mixture(
      TabularPolicy::Uniform(mdp.num_states(), mdp.num_actions()));
  ExactDdgcResult result{mixture, {}, {}, {}};
  for (int k = 1; k <= K; ++k) {
    const StateDistribution d = ExactDMixture(mdp, mixture);
    const std::vector<double> reward = CustomReward(d.probs, mdp.goal_mask());
    mixture = MixtureUpdate(mixture, GreedyPolicy(SolveOptimalQ(mdp, reward)),
                            k);
    std::vector<double> d_next = ExactDMixture(mdp, mixture).probs;
    const double f = Objective(mdp.goal_mask(), d_next).objective_f;
    result.objective.push_back(f);
    result.distributions.push_back(std::move(d_next));
    if (f_star) result.gaps.push_back(*f_star - f);
  }
  result.mixture = std::move(mixture);
  return result;
}

ContinuousDdgcResult RunDdgcContinuous(const PointMassEnv& env,
                                       const DdgcConfig& config) {
  config.Validate();
  const double gamma = config.gamma.value_or(env.gamma());
  const GridDiscretizer grid(config.discretization_precision, 2);
  const RbfGrid rbf(config.rbf_per_dim);
  const PointMassFeatures features(rbf);
  const int explore_episodes = config.ExplorationEpisodes();
  auto cell_of = [&grid](const Vec2& p) { return grid.Cell(p); };

  Mixture<ParametricPolicy> mixture(ParametricPolicy::UniformRandom(rbf));
  GoalBuffer<ContinuousTransition> buffer(
      static_cast<std::size_t>(config.goal_buffer_capacity));
  std::vector<std::int64_t> cell_counts(
      static_cast<std::size_t>(grid.num_cells()), 0);
  ContinuousDdgcResult result{mixture, {}, {}};
  const ParametricPolicy* warm_start = nullptr;

  for (int k = 1; k <= config.K; ++k) {
    const auto start = Clock::now();
    const ContinuousBatch batch =
        SampleContinuousBatch(env, mixture, config.N_T, config.H,
                              IterationSeed(config.seed, k, kOnPolicyStream));

    ContinuousBatch explore;
    if (explore_episodes > 0) {
      const std::uint64_t seed =
          IterationSeed(config.seed, k, kExplorationStream);
      if (config.exploration == ExplorationKind::kCountBonus) {
        // Head for the least-visited neighbouring cell among 8 directions.
        explore = SampleContinuousBatchWith(
            env,
            [&](const Vec2& s, Rng& rng) {
              constexpr double kDiag = 0.7071067811865476;
              static const Vec2 kDirs[8] = {
                  {1, 0},         {-1, 0},         {0, 1},
                  {0, -1},        {kDiag, kDiag},  {kDiag, -kDiag},
                  {-kDiag, kDiag}, {-kDiag, -kDiag}};
              std::int64_t best = std::numeric_limits<std::int64_t>::max();
              std::vector<int> ties;
              for (int i = 0; i < 8; ++i) {
                const double step = 1.0 / grid.precision();
                const Vec2 probe{std::clamp(s[0] + kDirs[i][0] * step, 0.0, 1.0),
                                 std::clamp(s[1] + kDirs[i][1] * step, 0.0, 1.0)};
                const std::int64_t c = cell_counts[grid.Cell(probe)];
                if (c < best) {
                  best = c;
                  ties.assign(1, i);
                } else if (c == best) {
                  ties.push_back(i);
                }
              }
              const int pick = ties[static_cast<std::size_t>(
                  UniformDouble(rng) * ties.size())];
              ++cell_counts[grid.Cell(s)];
              return kDirs[pick];
            },
            explore_episodes, config.H, seed);
      } else {
        explore = SampleContinuousBatchWith(
            env,
            [](const Vec2&, Rng& rng) {
              return Vec2{2.0 * UniformDouble(rng) - 1.0,
                          2.0 * UniformDouble(rng) - 1.0};
            },
            explore_episodes, config.H, seed);
      }
    }

    // The buffer sees extrinsic rewards, before relabeling.
    const ContinuousBatch buffered = buffer.AsBatch(config.H);
    buffer.Update(batch);
    if (!explore.episodes.empty()) buffer.Update(explore);

    const CellVisitationEstimate estimate = EstimateCellD(batch, gamma, cell_of);
    auto reward_of = [&](const Vec2& p) {
      return env.IsGoal(p) ? std::clamp(1.0 - estimate.At(grid.Cell(p)), 0.0, 1.0)
                           : 0.0;
    };
    const ContinuousBatch rl_batch =
        Relabel(MergeBatches({&batch, &explore, &buffered}), reward_of);

    ContinuousActorCriticResult fac = FittedActorCritic(
        rl_batch, features, gamma, config.N_FQI, config.actor_critic,
        warm_start);
    mixture = MixtureUpdate(mixture, std::move(fac.policy), k);
    warm_start = &mixture.policy(mixture.size() - 1);

    IterationRecord record;
    record.iteration = k;
    record.d_hat.assign(static_cast<std::size_t>(grid.num_cells()), 0.0);
    record.reward.assign(record.d_hat.size(), 0.0);
    for (const auto& [cell, mass] : estimate.d_hat) {
      record.d_hat[static_cast<std::size_t>(cell)] = mass;
    }
    for (std::int64_t cell = 0; cell < grid.num_cells(); ++cell) {
      const auto c = grid.CellCenter(cell);
      const Vec2 center{c[0], c[1]};
      record.reward[static_cast<std::size_t>(cell)] =
          env.IsGoal(center) ? 1.0 - estimate.At(cell) : 0.0;
    }
    record.policy_index = static_cast<int>(mixture.size()) - 1;
    record.weights = mixture.weights();
    record.wall_time_seconds = SecondsSince(start);
    result.trace.push_back(std::move(record));
    result.buffer_sizes.push_back(static_cast<int>(buffer.size()));
  }
  result.mixture = std::move(mixture);
  return result;
}

}  // namespace ddgc
