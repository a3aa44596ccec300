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

#ifndef DDGC_POINT_MASS_H_
#define DDGC_POINT_MASS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "ddgc/policy.h"
#include "ddgc/rng.h"
#include "ddgc/sampling.h"

namespace ddgc {

using Vec2 = std::array<double, 2>;

struct GoalDisc {
  Vec2 center{0.5, 0.5};
  double radius = 0.1;

  bool Contains(const Vec2& p) const;
};

struct ContinuousTransition {
  Vec2 s{};
  Vec2 a{};
  double r = 0.0;
  Vec2 s_next{};
  int t = 1;

  friend bool operator==(const ContinuousTransition&,
                         const ContinuousTransition&) = default;
};

using ContinuousBatch = Batch<ContinuousTransition>;

// Point mass in [0,1]^2 driven by velocity commands a in [-1,1]^2:
//   s' = clip(s + a * dt + N(0, noise_sigma^2 I), 0, 1).
// The reward is 1 when s' lies inside any goal disc.
class PointMassEnv {
 public:
  struct Options {
    std::vector<GoalDisc> goals;
    double dt = 0.05;
    double noise_sigma = 0.0;
    double gamma = 0.95;
    Vec2 start{0.5, 0.5};
    std::uint64_t seed = 0;
  };

  explicit PointMassEnv(Options options);

  const std::vector<GoalDisc>& goals() const { return options_.goals; }
  double dt() const { return options_.dt; }
  double noise_sigma() const { return options_.noise_sigma; }
  double gamma() const { return options_.gamma; }
  const Vec2& start() const { return options_.start; }
  std::uint64_t seed() const { return options_.seed; }
  const Options& options() const { return options_; }

  static constexpr double kActionLimit = 1.0;

  Vec2 Step(const Vec2& s, const Vec2& a, Rng& rng) const;
  // Index of the first disc containing p, or -1.
  int GoalIndex(const Vec2& p) const;
  bool IsGoal(const Vec2& p) const { return GoalIndex(p) >= 0; }
  double Reward(const Vec2& p) const { return IsGoal(p) ? 1.0 : 0.0; }

 private:
  Options options_;
};

PointMassEnv MakePointMassEnv(std::vector<GoalDisc> goal_discs, double dt,
                              double noise_sigma, std::uint64_t seed);

// Three well separated discs around a central start; used by the continuous
// smoke runs and the harness "point_mass" environment.
PointMassEnv MakeThreeDiscEnv(double noise_sigma = 0.01,
                              std::uint64_t seed = 0);

using ContinuousActionSelector = std::function<Vec2(const Vec2&, Rng&)>;

std::vector<ContinuousTransition> SampleContinuousEpisode(
    const PointMassEnv& env, const ContinuousActionSelector& select,
    int horizon, std::uint64_t seed);

// Mixture rollouts with the same seeding scheme as the discrete SampleBatch.
// Policy must provide `Vec2 Act(const Vec2&, Rng&) const`.
template <typename Policy>
ContinuousBatch SampleContinuousBatch(const PointMassEnv& env,
                                      const Mixture<Policy>& mixture,
                                      int num_trajectories, int horizon,
                                      std::uint64_t seed) {
  CheckArgument(num_trajectories >= 1, "num_trajectories must be >= 1");
  ContinuousBatch batch;
  batch.horizon = horizon;
  batch.seed = seed;
  for (int i = 0; i < num_trajectories; ++i) {
    Rng selector(DeriveSeed(seed ^ 0x5E1EC7ULL, i));
    const std::size_t c = mixture.SampleComponent(selector);
    const Policy& policy = mixture.policy(c);
    Episode<ContinuousTransition> episode;
    episode.steps = SampleContinuousEpisode(
        env, [&policy](const Vec2& s, Rng& rng) { return policy.Act(s, rng); },
        horizon, EpisodeSeed(seed, i));
    episode.component = static_cast<int>(c);
    episode.batch_seed = seed;
    episode.index = static_cast<std::uint64_t>(i);
    batch.episodes.push_back(std::move(episode));
  }
  return batch;
}

ContinuousBatch SampleContinuousBatchWith(const PointMassEnv& env,
                                          const ContinuousActionSelector& select,
                                          int num_trajectories, int horizon,
                                          std::uint64_t seed);

}  // namespace ddgc

#endif  // DDGC_POINT_MASS_H_
