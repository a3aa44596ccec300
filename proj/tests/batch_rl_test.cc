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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ddgc/batch_rl.h"
#include "ddgc/envs.h"
#include "ddgc/estimator.h"
#include "ddgc/exact.h"
#include "ddgc/point_mass.h"
#include "ddgc/q_table.h"
#include "test_util.h"

namespace ddgc {
namespace {

TrajectoryBatch SingleSteps(const std::vector<Transition>& steps) {
  TrajectoryBatch b;
  b.horizon = 1;
  std::uint64_t i = 0;
  for (const auto& t : steps) {
    Episode<Transition> e;
    e.steps = {t};
    e.index = i++;
    b.episodes.push_back(e);
  }
  return b;
}

std::vector<double> GoalReward(const DiscreteMdp& mdp) {
  std::vector<double> r(mdp.num_states());
  for (StateId s = 0; s < mdp.num_states(); ++s) r[s] = mdp.Reward(s);
  return r;
}

TEST(GreedyPolicyTest, TieBreaksToLowestAction) {
  QTable q(2, 2, 0.5);
  EXPECT_EQ(GreedyPolicy(q).ModalActions(), (std::vector<ActionId>{0, 0}));
  q.Set(0, 0, 1);
  q.Set(0, 1, 2);
  q.Set(1, 0, 3);
  q.Set(1, 1, 0);
  const TabularPolicy p = GreedyPolicy(q);
  EXPECT_TRUE(p.IsDeterministic());
  EXPECT_EQ(p.ModalActions(), (std::vector<ActionId>{1, 0}));
}

TEST(QTableTest, ClipsToValueRange) {
  QTable q(1, 1, 0.5);
  q.Set(0, 0, 5.0);
  EXPECT_EQ(q(0, 0), 2.0);
  q.Set(0, 0, -1.0);
  EXPECT_EQ(q(0, 0), 0.0);
}

TEST(FqiTabularTest, TwoStateChainClosedForm) {
  // Reward 1 on transitions taken from s1.
  const auto batch = SingleSteps({{0, 0, 0.0, 1, 1}, {1, 0, 1.0, 1, 1}});
  const FqiResult r = FqiTabular(batch, 2, 1, 0.5, 50);
  EXPECT_NEAR(r.q(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(r.q(1, 0), 2.0, 1e-12);
}

TEST(FqiTabularTest, ZeroRewardGivesZeroQ) {
  const DiscreteMdp mdp = MakeRandomMdp({.seed = 1});
  const auto batch = testing::ExpectedCoverageBatch(
      mdp, std::vector<double>(mdp.num_states(), 0.0));
  const FqiResult r = FqiTabular(batch, mdp.num_states(), 2, 0.9, 20);
  for (double v : r.q.values()) EXPECT_EQ(v, 0.0);
  for (ActionId a : r.policy.ModalActions()) EXPECT_EQ(a, 0);
}

TEST(FqiTabularTest, OneIterationIsMeanReward) {
  const auto batch = SingleSteps({{0, 0, 1.0, 0, 1},
                                  {0, 0, 0.0, 1, 1},
                                  {0, 1, 0.25, 1, 1},
                                  {1, 1, 0.5, 0, 1}});
  const FqiResult r = FqiTabular(batch, 2, 2, 0.9, 1);
  EXPECT_NEAR(r.q(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(r.q(0, 1), 0.25, 1e-15);
  EXPECT_EQ(r.q(1, 0), 0.0);  // unseen keeps its initial value
  EXPECT_NEAR(r.q(1, 1), 0.5, 1e-15);
}

TEST(FqiTabularTest, EmptyBatchThrows) {
  EXPECT_THROW(FqiTabular(TrajectoryBatch{}, 2, 2, 0.9, 5), InvalidArgument);
}

TEST(FqiTabularTest, MatchesValueIterationOnExpectedBatch) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DiscreteMdp mdp = MakeRandomMdp({.seed = seed});
    const auto reward = GoalReward(mdp);
    const auto batch = testing::ExpectedCoverageBatch(mdp, reward);
    for (int n : {1, 10, 50}) {
      const FqiResult r = FqiTabular(batch, mdp.num_states(), 2, mdp.gamma(), n);
      const auto oracle = testing::ValueIterationQ(mdp, reward, n);
      for (std::size_t i = 0; i < oracle.size(); ++i) {
        EXPECT_NEAR(r.q.values()[i], oracle[i], 1e-10);
      }
    }
  }
}

TEST(FqiTabularTest, ContractsByGamma) {
  const DiscreteMdp mdp = MakeRandomMdp({.gamma = 0.8, .seed = 9});
  const auto batch = testing::ExpectedCoverageBatch(mdp, GoalReward(mdp));
  double previous = -1.0;
  QTable last = FqiTabular(batch, mdp.num_states(), 2, 0.8, 1).q;
  for (int n = 2; n <= 25; ++n) {
    QTable next = FqiTabular(batch, mdp.num_states(), 2, 0.8, n).q;
    const double diff = next.MaxAbsDiff(last);
    if (previous >= 0.0) EXPECT_LE(diff, 0.8 * previous + 1e-12);
    previous = diff;
    last = std::move(next);
    for (double v : last.values()) EXPECT_LE(v, last.v_max());
  }
}

TEST(FqiTabularTest, GreedyImprovesOnBehaviour) {
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DiscreteMdp mdp = MakeRandomMdp({.seed = seed});
    std::vector<double> reward(mdp.num_states());
    for (double& r : reward) r = UniformDouble(rng);
    const auto batch = testing::ExpectedCoverageBatch(mdp, reward);
    const FqiResult r = FqiTabular(batch, mdp.num_states(), 2, mdp.gamma(), 200);
    const auto behaviour = TabularPolicy::Uniform(mdp.num_states(), 2);
    EXPECT_GE(DiscountedReturn(mdp, r.policy, reward),
              DiscountedReturn(mdp, behaviour, reward) - 1e-12);
  }
}

TEST(FittedActorCriticTest, OneHotMatchesTabularFqi) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const DiscreteMdp mdp = MakeRandomMdp({.seed = seed});
    const auto batch =
        testing::ExpectedCoverageBatch(mdp, GoalReward(mdp), /*scale=*/200);
    const int n = mdp.num_states();
    const FqiResult fqi = FqiTabular(batch, n, 2, mdp.gamma(), 30);
    const auto fac = FittedActorCritic(batch, DiscreteFeatures::OneHot(n, 2), n, 2,
                                       mdp.gamma(), 30);
    Eigen::VectorXd phi(2 * n);
    for (StateId s = 0; s < n; ++s) {
      for (ActionId a = 0; a < 2; ++a) {
        DiscreteFeatures::OneHot(n, 2).fill(s, a, phi);
        EXPECT_NEAR(fac.critic.Value(phi), fqi.q(s, a), 1e-6);
      }
    }
    EXPECT_EQ(fac.policy, fqi.policy);
  }
}

TEST(FittedActorCriticTest, FeatureDimensionGuard) {
  const auto batch = SingleSteps({{0, 0, 0.0, 1, 1}});
  EXPECT_THROW(FittedActorCritic(batch, DiscreteFeatures::OneHot(2, 2), 2, 2, 0.9, 5),
               InvalidArgument);
}

TEST(FittedActorCriticTest, ZeroRewardCriticIsZero) {
  const PointMassEnv env = MakeThreeDiscEnv(0.0, 0);
  const auto batch = SampleContinuousBatchWith(
      env, [](const Vec2&, Rng& rng) {
        return Vec2{2 * UniformDouble(rng) - 1, 2 * UniformDouble(rng) - 1};
      },
      40, 20, 3);
  const auto zero = Relabel(batch, [](const Vec2&) { return 0.0; });
  const PointMassFeatures features(RbfGrid(4));
  const auto r = FittedActorCritic(zero, features, 0.9, 5);
  EXPECT_LE(r.critic.weights().cwiseAbs().maxCoeff(), 1e-6);
}

TEST(RbfGridTest, NormalizedAndPositive) {
  const RbfGrid grid(5);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Vec2 s{UniformDouble(rng), UniformDouble(rng)};
    const Eigen::VectorXd v = grid.Eval(s);
    EXPECT_NEAR(v.sum(), 1.0, 1e-12);
    EXPECT_GT(v.minCoeff(), 0.0);
  }
}

TEST(PointMassFeaturesTest, ActionGradientMatchesFiniteDifference) {
  const PointMassFeatures features(RbfGrid(3));
  Rng rng(2);
  Eigen::VectorXd w(features.dim());
  for (int i = 0; i < w.size(); ++i) w[i] = 2 * UniformDouble(rng) - 1;
  const Vec2 s{0.3, 0.6};
  const Vec2 a{0.2, -0.4};
  const Vec2 g = features.ActionGradient(w, features.grid().Eval(s), a);
  const double h = 1e-6;
  for (int i = 0; i < 2; ++i) {
    Vec2 up = a;
    Vec2 down = a;
    up[i] += h;
    down[i] -= h;
    const double fd =
        (w.dot(features.Eval(s, up)) - w.dot(features.Eval(s, down))) / (2 * h);
    EXPECT_NEAR(g[i], fd, 1e-7);
  }
}

TEST(ParametricPolicyTest, ActionsStayInBox) {
  const RbfGrid grid(4);
  const ParametricPolicy p(grid, Eigen::MatrixXd::Constant(2, grid.dim(), 50.0));
  Rng rng(0);
  for (int i = 0; i < 20; ++i) {
    const Vec2 a = p.Act({UniformDouble(rng), UniformDouble(rng)}, rng);
    for (double x : a) EXPECT_LE(std::abs(x), 1.0);
  }
  const ParametricPolicy random = ParametricPolicy::UniformRandom(grid);
  EXPECT_TRUE(random.is_random());
  for (int i = 0; i < 20; ++i) {
    for (double x : random.Act({0.5, 0.5}, rng)) EXPECT_LE(std::abs(x), 1.0);
  }
}

TEST(FittedActorCriticTest, LearnsToApproachSingleDisc) {
  PointMassEnv::Options o;
  o.goals = {{{0.75, 0.5}, 0.12}};
  o.start = {0.5, 0.5};
  o.dt = 0.05;
  o.gamma = 0.9;
  const PointMassEnv env(o);
  const auto batch = SampleContinuousBatchWith(
      env, [](const Vec2&, Rng& rng) {
        return Vec2{2 * UniformDouble(rng) - 1, 2 * UniformDouble(rng) - 1};
      },
      200, 40, 17);
  const PointMassFeatures features(RbfGrid(5));
  const auto result = FittedActorCritic(batch, features, 0.9, 15);
  Rng rng(0);
  const auto steps = SampleContinuousEpisode(
      env, [&](const Vec2& s, Rng& r) { return result.policy.Act(s, r); }, 30, 1);
  auto distance = [&](const Vec2& p) {
    return std::hypot(p[0] - 0.75, p[1] - 0.5);
  };
  EXPECT_TRUE(env.IsGoal(steps.back().s_next))
      << distance(steps.back().s_next);
}

}  // namespace
}  // namespace ddgc
