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

#include "ddgc/point_mass.h"

#include <algorithm>
#include <cmath>

namespace ddgc {

bool GoalDisc::Contains(const Vec2& p) const {
  const double dx = p[0] - center[0];
  const double dy = p[1] - center[1];
  return dx * dx + dy * dy <= radius * radius;
}

PointMassEnv::PointMassEnv(Options options) : options_(std::move(options)) {
  CheckArgument(options_.dt > 0.0, "dt must be positive");
  CheckArgument(options_.noise_sigma >= 0.0, "noise_sigma must be >= 0");
  CheckArgument(options_.gamma >= 0.0 && options_.gamma < 1.0,
                "gamma must lie in [0, 1)");
  for (double x : options_.start) {
    CheckArgument(x >= 0.0 && x <= 1.0, "start must lie in the unit box");
  }
  for (const auto& g : options_.goals) {
    CheckArgument(g.radius > 0.0, "goal radius must be positive");
  }
}

Vec2 PointMassEnv::Step(const Vec2& s, const Vec2& a, Rng& rng) const {
  Vec2 next;
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int i = 0; i < 2; ++i) {
    const double u = std::clamp(a[i], -kActionLimit, kActionLimit);
    double x = s[i] + u * options_.dt;
    if (options_.noise_sigma > 0.0) x += options_.noise_sigma * noise(rng);
    next[i] = std::clamp(x, 0.0, 1.0);
  }
  return next;
}

int PointMassEnv::GoalIndex(const Vec2& p) const {
  for (std::size_t i = 0; i < options_.goals.size(); ++i) {
    if (options_.goals[i].Contains(p)) return static_cast<int>(i);
  }
  return -1;
}

PointMassEnv MakePointMassEnv(std::vector<GoalDisc> goal_discs, double dt,
                              double noise_sigma, std::uint64_t seed) {
  PointMassEnv::Options o;
  o.goals = std::move(goal_discs);
  o.dt = dt;
  o.noise_sigma = noise_sigma;
  o.seed = seed;
  return PointMassEnv(std::move(o));
}

PointMassEnv MakeThreeDiscEnv(double noise_sigma, std::uint64_t seed) {
  return MakePointMassEnv({{{0.2, 0.8}, 0.1}, {{0.8, 0.8}, 0.1}, {{0.8, 0.2}, 0.1}},
                          0.05, noise_sigma, seed);
}

std::vector<ContinuousTransition> SampleContinuousEpisode(
    const PointMassEnv& env, const ContinuousActionSelector& select,
    int horizon, std::uint64_t seed) {
  CheckArgument(horizon >= 1, "horizon must be >= 1");
  Rng rng(seed);
  std::vector<ContinuousTransition> steps;
  steps.reserve(horizon);
  Vec2 s = env.start();
  for (int t = 1; t <= horizon; ++t) {
    Vec2 a = select(s, rng);
    for (double& x : a) {
      x = std::clamp(x, -PointMassEnv::kActionLimit, PointMassEnv::kActionLimit);
    }
    const Vec2 next = env.Step(s, a, rng);
    steps.push_back({s, a, env.Reward(next), next, t});
    s = next;
  }
  return steps;
}

ContinuousBatch SampleContinuousBatchWith(const PointMassEnv& env,
                                          const ContinuousActionSelector& select,
                                          int num_trajectories, int horizon,
                                          std::uint64_t seed) {
  CheckArgument(num_trajectories >= 1, "num_trajectories must be >= 1");
  ContinuousBatch batch;
  batch.horizon = horizon;
  batch.seed = seed;
  for (int i = 0; i < num_trajectories; ++i) {
    Episode<ContinuousTransition> episode;
    episode.steps =
        SampleContinuousEpisode(env, select, horizon, EpisodeSeed(seed, i));
    episode.component = -1;
    episode.batch_seed = seed;
    episode.index = static_cast<std::uint64_t>(i);
    batch.episodes.push_back(std::move(episode));
  }
  return batch;
}

}  // namespace ddgc
