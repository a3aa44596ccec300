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

#include "ddgc/sampling.h"

namespace ddgc {
namespace {

// Stream tag separating component draws from rollout draws.
constexpr std::uint64_t kSelectorStream = 0x5E1EC7ULL;

}  // namespace

std::vector<Transition> SampleEpisodeWith(const DiscreteMdp& mdp,
                                          const ActionSelector& select,
                                          int horizon, std::uint64_t seed) {
  CheckArgument(horizon >= 1, "horizon must be >= 1");
  Rng rng(seed);
  std::vector<Transition> steps;
  steps.reserve(horizon);
  StateId s = SampleIndex(mdp.rho0(), rng);
  for (int t = 1; t <= horizon; ++t) {
    const ActionId a = select(s, rng);
    CheckArgument(mdp.ValidAction(a), "selector returned an invalid action");
    const StateId next = SampleIndex(mdp.TransitionRow(s, a), rng);
    steps.push_back({s, a, mdp.Reward(next), next, t});
    s = next;
  }
  return steps;
}

std::vector<Transition> SampleEpisode(const DiscreteMdp& mdp,
                                      const TabularPolicy& policy,
                                      int horizon, std::uint64_t seed) {
  CheckArgument(policy.num_states() == mdp.num_states() &&
                    policy.num_actions() == mdp.num_actions(),
                "policy shape does not match the MDP");
  return SampleEpisodeWith(
      mdp, [&policy](StateId s, Rng& rng) { return policy.Sample(s, rng); },
      horizon, seed);
}

TrajectoryBatch SampleBatch(const DiscreteMdp& mdp,
                            const PolicyMixture& mixture, int num_trajectories,
                            int horizon, std::uint64_t seed) {
  CheckArgument(num_trajectories >= 1, "num_trajectories must be >= 1");
  TrajectoryBatch batch;
  batch.horizon = horizon;
  batch.seed = seed;
  batch.episodes.reserve(num_trajectories);
  for (int i = 0; i < num_trajectories; ++i) {
    Rng selector(DeriveSeed(seed ^ kSelectorStream, i));
    const std::size_t c = mixture.SampleComponent(selector);
    Episode<Transition> episode;
    episode.steps =
        SampleEpisode(mdp, mixture.policy(c), horizon, EpisodeSeed(seed, i));
    episode.component = static_cast<int>(c);
    episode.batch_seed = seed;
    episode.index = static_cast<std::uint64_t>(i);
    batch.episodes.push_back(std::move(episode));
  }
  return batch;
}

TrajectoryBatch SampleBatchWith(const DiscreteMdp& mdp,
                                const ActionSelector& select,
                                int num_trajectories, int horizon,
                                std::uint64_t seed) {
  CheckArgument(num_trajectories >= 1, "num_trajectories must be >= 1");
  TrajectoryBatch batch;
  batch.horizon = horizon;
  batch.seed = seed;
  batch.episodes.reserve(num_trajectories);
  for (int i = 0; i < num_trajectories; ++i) {
    Episode<Transition> episode;
    episode.steps =
        SampleEpisodeWith(mdp, select, horizon, EpisodeSeed(seed, i));
    episode.component = -1;
    episode.batch_seed = seed;
    episode.index = static_cast<std::uint64_t>(i);
    batch.episodes.push_back(std::move(episode));
  }
  return batch;
}

bool EpisodeIsWellFormed(const std::vector<Transition>& steps, int horizon) {
  if (static_cast<int>(steps.size()) != horizon) return false;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].t != static_cast<int>(i) + 1) return false;
    if (i + 1 < steps.size() && steps[i].s_next != steps[i + 1].s) {
      return false;
    }
  }
  return true;
}

}  // namespace ddgc
