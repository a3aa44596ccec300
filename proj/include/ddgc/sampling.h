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

#ifndef DDGC_SAMPLING_H_
#define DDGC_SAMPLING_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "ddgc/common.h"
#include "ddgc/mdp.h"
#include "ddgc/policy.h"
#include "ddgc/rng.h"

namespace ddgc {

// One step (s, a, r, s', t) with t in [1, H]. The reward is R(s'), the
// reward of the state entered.
struct Transition {
  StateId s = 0;
  ActionId a = 0;
  double r = 0.0;
  StateId s_next = 0;
  int t = 1;

  friend bool operator==(const Transition&, const Transition&) = default;
};

template <typename Step>
struct Episode {
  std::vector<Step> steps;
  // Mixture component that generated the episode.
  int component = 0;
  // (batch seed, index) identifies the episode across batches.
  std::uint64_t batch_seed = 0;
  std::uint64_t index = 0;

  double Return() const {
    double total = 0.0;
    for (const auto& step : steps) total += step.r;
    return total;
  }

  friend bool operator==(const Episode&, const Episode&) = default;
};

template <typename Step>
struct Batch {
  std::vector<Episode<Step>> episodes;
  int horizon = 0;
  std::uint64_t seed = 0;

  int num_trajectories() const { return static_cast<int>(episodes.size()); }
  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (const auto& e : episodes) n += e.steps.size();
    return n;
  }
  bool empty() const { return num_transitions() == 0; }

  template <typename Fn>
  void ForEachStep(Fn&& fn) const {
    for (const auto& e : episodes) {
      for (const auto& step : e.steps) fn(step);
    }
  }

  friend bool operator==(const Batch&, const Batch&) = default;
};

using TrajectoryBatch = Batch<Transition>;

// Action source for a rollout: (state, rng) -> action.
using ActionSelector = std::function<ActionId(StateId, Rng&)>;

// H-step rollout driven by `select`. s0 ~ rho0, a ~ select, s' ~ P(.|s,a).
std::vector<Transition> SampleEpisodeWith(const DiscreteMdp& mdp,
                                          const ActionSelector& select,
                                          int horizon, std::uint64_t seed);

std::vector<Transition> SampleEpisode(const DiscreteMdp& mdp,
                                      const TabularPolicy& policy,
                                      int horizon, std::uint64_t seed);

// Episode i draws its component from one derived stream and rolls out with
// DeriveSeed(seed, i), so a single-policy batch matches SampleEpisode called
// with those per-episode seeds.
TrajectoryBatch SampleBatch(const DiscreteMdp& mdp,
                            const PolicyMixture& mixture, int num_trajectories,
                            int horizon, std::uint64_t seed);

// Episodes from a (possibly stateful) selector; component is recorded as -1.
TrajectoryBatch SampleBatchWith(const DiscreteMdp& mdp,
                                const ActionSelector& select,
                                int num_trajectories, int horizon,
                                std::uint64_t seed);

// Checks 1 <= t <= H, exact length H, and s_next(t) == s(t+1).
bool EpisodeIsWellFormed(const std::vector<Transition>& steps, int horizon);

// Per-episode rollout seed used by SampleBatch.
inline std::uint64_t EpisodeSeed(std::uint64_t batch_seed, std::uint64_t i) {
  return DeriveSeed(batch_seed, i);
}

}  // namespace ddgc

#endif  // DDGC_SAMPLING_H_
