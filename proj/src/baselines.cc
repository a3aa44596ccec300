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

#include "ddgc/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ddgc/batch_rl.h"
#include "ddgc/estimator.h"
#include "ddgc/rng.h"
#include "ddgc/sampling.h"

namespace ddgc {
namespace {

StateId SampleStart(const DiscreteMdp& mdp, Rng& rng) {
  return SampleIndex(mdp.rho0(), rng);
}

}  // namespace

std::int64_t CountTable::Total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

QLearningResult QLearningCountBonus(const DiscreteMdp& mdp,
                                    const QLearningOptions& options) {
  CheckArgument(options.steps >= 0, "steps must be >= 0");
  CheckArgument(options.alpha > 0.0 && options.alpha <= 1.0,
                "alpha must lie in (0, 1]");
  CheckArgument(options.bonus_scale >= 0.0, "bonus_scale must be >= 0");
  CheckArgument(options.horizon >= 1, "horizon must be >= 1");
  const int num_states = mdp.num_states();
  const int num_actions = mdp.num_actions();
  const double gamma = mdp.gamma();

  QTable extrinsic(num_states, num_actions, gamma);
  std::vector<double> behavior(
      static_cast<std::size_t>(num_states) * num_actions, 0.0);
  CountTable counts(num_states);
  Rng rng(options.seed);

  auto behavior_row = [&](StateId s) {
    return std::span<const double>(
        behavior.data() + static_cast<std::size_t>(s) * num_actions,
        static_cast<std::size_t>(num_actions));
  };

  StateId s = SampleStart(mdp, rng);
  std::vector<ActionId> ties;
  for (std::int64_t step = 0; step < options.steps; ++step) {
    if (step > 0 && step % options.horizon == 0) s = SampleStart(mdp, rng);
    const double progress =
        options.steps > 1 ? static_cast<double>(step) / (options.steps - 1)
                          : 1.0;
    const double epsilon =
        options.epsilon_start +
        (options.epsilon_end - options.epsilon_start) * progress;

    ActionId a;
    if (UniformDouble(rng) < epsilon) {
      a = static_cast<ActionId>(UniformDouble(rng) * num_actions);
    } else {
      const auto row = behavior_row(s);
      const double best = *std::max_element(row.begin(), row.end());
      ties.clear();
      for (ActionId b = 0; b < num_actions; ++b) {
        if (row[b] == best) ties.push_back(b);
      }
      a = ties[static_cast<std::size_t>(UniformDouble(rng) * ties.size())];
    }
    const StateId next = SampleIndex(mdp.TransitionRow(s, a), rng);
    counts.Increment(next);

    const double r = mdp.Reward(next);
    const double bonus =
        options.bonus_scale /
        std::sqrt(std::max<double>(1.0, static_cast<double>(counts[next])));
    const auto next_row = behavior_row(next);
    const double behavior_target =
        r + bonus + gamma * *std::max_element(next_row.begin(), next_row.end());
    double& qb = behavior[static_cast<std::size_t>(s) * num_actions + a];
    qb += options.alpha * (behavior_target - qb);

    const double extrinsic_target = r + gamma * extrinsic.MaxValue(next);
    extrinsic.Set(s, a,
                  extrinsic(s, a) +
                      options.alpha * (extrinsic_target - extrinsic(s, a)));
    s = next;
  }
  TabularPolicy policy = GreedyPolicy(extrinsic);
  return {std::move(policy), std::move(extrinsic), std::move(behavior),
          std::move(counts)};
}

RandomPolicyResult RandomPolicyEval(const DiscreteMdp& mdp) {
  TabularPolicy policy =
      TabularPolicy::Uniform(mdp.num_states(), mdp.num_actions());
  ObjectiveReport report = Objective(mdp, ExactD(mdp, policy));
  return {std::move(policy), std::move(report)};
}

std::vector<double> SmmTargetDensity(const DiscreteMdp& mdp) {
  std::vector<double> p(static_cast<std::size_t>(mdp.num_states()));
  double total = 0.0;
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    p[s] = std::exp(mdp.Reward(s));
    total += p[s];
  }
  for (double& x : p) x /= total;
  return p;
}

std::vector<double> SmmReward(std::span<const double> target,
                              std::span<const double> d_hat, double floor) {
  CheckArgument(target.size() == d_hat.size(), "SMM reward size mismatch");
  CheckArgument(floor > 0.0, "density floor must be positive");
  std::vector<double> r(target.size());
  for (std::size_t s = 0; s < r.size(); ++s) {
    r[s] = std::log(target[s]) - std::log(std::max(d_hat[s], floor));
  }
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  const double low = *lo;
  const double span = *hi - low;
  for (double& x : r) x = span > 0.0 ? (x - low) / span : 0.0;
  return r;
}

PolicyMixture SmmMixture(const DiscreteMdp& mdp, int K,
                         const SmmConfig& config) {
  CheckArgument(K >= 1, "K must be >= 1");
  CheckArgument(config.N_T >= 1 && config.H >= 1 && config.N_FQI >= 1,
                "N_T, H and N_FQI must be >= 1");
  const int num_states = mdp.num_states();
  const int num_actions = mdp.num_actions();
  const std::vector<double> target = SmmTargetDensity(mdp);
  const int explore = config.exploration_episodes >= 0
                          ? config.exploration_episodes
                          : std::max(1, config.N_T / 4);
  const TabularPolicy uniform = TabularPolicy::Uniform(num_states, num_actions);

  PolicyMixture mixture(uniform);
  for (int k = 1; k <= K; ++k) {
    const std::uint64_t base = DeriveSeed(config.seed, static_cast<std::uint64_t>(k));
    const TrajectoryBatch batch =
        SampleBatch(mdp, mixture, config.N_T, config.H, DeriveSeed(base, 0));
    const VisitationEstimate estimate =
        EstimateD(batch, num_states, mdp.gamma());
    const std::vector<double> reward =
        SmmReward(target, estimate.d_hat, config.density_floor);
    TrajectoryBatch rl_batch = Relabel(batch, reward);
    if (explore > 0) {
      const TrajectoryBatch extra = Relabel(
          SampleBatchWith(
              mdp,
              [&uniform](StateId s, Rng& rng) { return uniform.Sample(s, rng); },
              explore, config.H, DeriveSeed(base, 1)),
          reward);
      rl_batch = MergeBatches({&rl_batch, &extra});
    }
    FqiResult fqi =
        FqiTabular(rl_batch, num_states, num_actions, mdp.gamma(), config.N_FQI);
    mixture = MixtureUpdate(mixture, std::move(fqi.policy), k);
  }
  return mixture;
}

}  // namespace ddgc
