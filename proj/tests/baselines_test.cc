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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ddgc/baselines.h"
#include "ddgc/ddgc.h"
#include "ddgc/envs.h"
#include "ddgc/exact.h"
#include "test_util.h"

namespace ddgc {
namespace {

// Line 0 - 1 - 2 - 3 with action 0 moving right, action 1 left; goal 3.
DiscreteMdp Line(double gamma) {
  return DiscreteMdp::Deterministic({{1, 0}, {2, 0}, {3, 1}, {3, 3}},
                                    {false, false, false, true}, gamma, 0);
}

double LargestGoalShare(const DiscreteMdp& mdp, const std::vector<double>& d) {
  double total = 0.0;
  double best = 0.0;
  for (StateId g : mdp.GoalStates()) {
    total += d[g];
    best = std::max(best, d[g]);
  }
  return best / total;
}

TEST(CountTableTest, Totals) {
  CountTable c(3);
  c.Increment(0);
  c.Increment(2);
  c.Increment(2);
  EXPECT_EQ(c.Total(), 3);
  EXPECT_EQ(c[2], 2);
  EXPECT_EQ(c[1], 0);
}

TEST(QLearningCountBonusTest, CountsOneVisitPerStep) {
  QLearningOptions o;
  o.steps = 1234;
  const auto r = QLearningCountBonus(MakeFigure1Mdp(), o);
  EXPECT_EQ(r.counts.Total(), 1234);
}

TEST(QLearningCountBonusTest, NoStepsGivesFirstActions) {
  QLearningOptions o;
  o.steps = 0;
  const auto r = QLearningCountBonus(MakeFigure1Mdp(), o);
  for (ActionId a : r.policy.ModalActions()) EXPECT_EQ(a, 0);
  for (double v : r.extrinsic_q.values()) EXPECT_EQ(v, 0.0);
}

TEST(QLearningCountBonusTest, RejectsBadOptions) {
  QLearningOptions o;
  o.alpha = 0.0;
  EXPECT_THROW(QLearningCountBonus(MakeFigure1Mdp(), o), InvalidArgument);
  o = {};
  o.horizon = 0;
  EXPECT_THROW(QLearningCountBonus(MakeFigure1Mdp(), o), InvalidArgument);
}

TEST(QLearningCountBonusTest, WithoutBonusFindsShortestPath) {
  const DiscreteMdp mdp = Line(0.9);
  QLearningOptions o;
  o.steps = 20000;
  o.bonus_scale = 0.0;
  o.horizon = 10;
  const auto r = QLearningCountBonus(mdp, o);
  const auto q = testing::ValueIterationQ(
      mdp, {0.0, 0.0, 0.0, 1.0}, 500);
  for (StateId s = 0; s < 3; ++s) {
    const ActionId best = q[2 * s] >= q[2 * s + 1] ? 0 : 1;
    EXPECT_EQ(r.policy.ModalActions()[s], best);
    EXPECT_NEAR(r.extrinsic_q(s, best), q[2 * s + best], 0.05);
  }
}

TEST(QLearningCountBonusTest, IsDeterministicPerSeed) {
  QLearningOptions o;
  o.seed = 3;
  const auto a = QLearningCountBonus(MakeFigure1Mdp(), o);
  const auto b = QLearningCountBonus(MakeFigure1Mdp(), o);
  EXPECT_EQ(a.behavior_q, b.behavior_q);
  EXPECT_EQ(a.policy, b.policy);
}

TEST(QLearningCountBonusTest, ConcentratesOnOneGoal) {
  const DiscreteMdp mdp = MakeFigure1Mdp();
  QLearningOptions o;
  o.steps = 60000;
  const auto r = QLearningCountBonus(mdp, o);
  EXPECT_TRUE(r.policy.IsDeterministic());
  EXPECT_GE(LargestGoalShare(mdp, ExactD(mdp, r.policy).probs), 0.9);
}

TEST(RandomPolicyEvalTest, MatchesUniformPolicy) {
  const DiscreteMdp mdp = MakeFigure1Mdp();
  const auto r = RandomPolicyEval(mdp);
  const auto d = testing::PowerSeriesD(mdp, r.policy, 2000);
  EXPECT_NEAR(r.report.objective_f, testing::NaiveObjective(mdp, d), 1e-9);
  EXPECT_EQ(r.policy, TabularPolicy::Uniform(7, 2));
}

TEST(SmmTest, TargetOnTwoStates) {
  const DiscreteMdp mdp = testing::TwoStateChain(0.9);
  const auto p = SmmTargetDensity(mdp);
  EXPECT_NEAR(p[1], std::exp(1.0) / (std::exp(1.0) + 1.0), 1e-15);
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-15);
}

TEST(SmmTest, RewardIsRescaledLogRatio) {
  const std::vector<double> target = {0.25, 0.25, 0.5};
  const std::vector<double> d_hat = {0.5, 0.0, 0.5};
  const auto r = SmmReward(target, d_hat, 1e-4);
  // log ratios: log 0.5, log 2500, 0.
  const double lo = std::log(0.5);
  const double hi = std::log(2500.0);
  EXPECT_NEAR(r[0], 0.0, 1e-15);
  EXPECT_NEAR(r[1], 1.0, 1e-15);
  EXPECT_NEAR(r[2], -lo / (hi - lo), 1e-15);
  const std::vector<double> short_d = {0.5, 0.5};
  EXPECT_THROW(SmmReward(target, short_d, 1e-4), InvalidArgument);
}

TEST(SmmTest, MixtureSpreadsMassOffGoals) {
  const DiscreteMdp mdp = MakeFigure1Mdp();
  const PolicyMixture m = SmmMixture(mdp, 8, {});
  ASSERT_EQ(m.size(), 8u);
  for (int k = 1; k <= 8; ++k) {
    EXPECT_NEAR(m.weight(k - 1), 2.0 * k / 72.0, 1e-14);
  }
  const auto d = ExactDMixture(mdp, m).probs;
  double off_goal = 0.0;
  for (StateId s = 1; s < mdp.num_states(); ++s) {
    if (!mdp.IsGoal(s)) off_goal += d[s];
  }
  EXPECT_GT(off_goal, 0.0);
}

TEST(BaselineComparisonTest, DdgcBeatsBaselinesOnFigure1) {
  const DiscreteMdp mdp = MakeFigure1Mdp();
  DdgcConfig c;
  const double f_ddgc =
      Objective(mdp, ExactDMixture(mdp, RunDdgcDiscrete(mdp, c).mixture))
          .objective_f;
  QLearningOptions o;
  o.steps = 60000;
  const double f_q =
      Objective(mdp, ExactD(mdp, QLearningCountBonus(mdp, o).policy))
          .objective_f;
  const double f_random = RandomPolicyEval(mdp).report.objective_f;
  const double f_smm =
      Objective(mdp, ExactDMixture(mdp, SmmMixture(mdp, 8, {}))).objective_f;
  EXPECT_GT(f_ddgc, f_q);
  EXPECT_GT(f_ddgc, f_random);
  EXPECT_GT(f_ddgc, f_smm);
}

}  // namespace
}  // namespace ddgc
