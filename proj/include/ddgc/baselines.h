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

#ifndef DDGC_BASELINES_H_
#define DDGC_BASELINES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ddgc/exact.h"
#include "ddgc/mdp.h"
#include "ddgc/policy.h"
#include "ddgc/q_table.h"

namespace ddgc {

// Visit counts N(s); only ever incremented.
class CountTable {
 public:
  explicit CountTable(int num_states)
      : counts_(static_cast<std::size_t>(num_states), 0) {}

  void Increment(StateId s) { ++counts_[static_cast<std::size_t>(s)]; }
  std::int64_t operator[](StateId s) const {
    return counts_[static_cast<std::size_t>(s)];
  }
  std::int64_t Total() const;
  const std::vector<std::int64_t>& counts() const { return counts_; }

 private:
  std::vector<std::int64_t> counts_;
};

struct QLearningOptions {
  std::int64_t steps = 6000;
  double alpha = 0.1;
  double bonus_scale = 0.1;
  // Episode length before resetting to rho0.
  int horizon = 30;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  std::uint64_t seed = 0;
};

struct QLearningResult {
  TabularPolicy policy;  // greedy w.r.t. the extrinsic Q
  QTable extrinsic_q;
  // Bonus-shaped values are not bounded by 1 / (1 - gamma), so they live in a
  // plain row-major table.
  std::vector<double> behavior_q;
  CountTable counts;
};

// Online Q-learning. The behaviour Q learns r + bonus / sqrt(max(1, N(s')))
// and drives epsilon-greedy action selection (epsilon annealed linearly over
// the run); a second Q on the extrinsic reward alone is trained on the same
// transitions and defines the returned policy.
QLearningResult QLearningCountBonus(const DiscreteMdp& mdp,
                                    const QLearningOptions& options);

struct RandomPolicyResult {
  TabularPolicy policy;
  ObjectiveReport report;
};

RandomPolicyResult RandomPolicyEval(const DiscreteMdp& mdp);

// p*(s) = exp(R(s)) / sum_s' exp(R(s')).
std::vector<double> SmmTargetDensity(const DiscreteMdp& mdp);

struct SmmConfig {
  int N_T = 200;
  int H = 30;
  int N_FQI = 50;
  // Floor applied to d_hat inside the log.
  double density_floor = 1e-4;
  // Uniform episodes added to the FQI batch, -1 = N_T / 4.
  int exploration_episodes = -1;
  std::uint64_t seed = 0;
};

// Iterative state-marginal matching: iteration k maximizes
// log p*(s') - log d_hat_{k-1}(s'), affinely rescaled into [0, 1], via
// tabular FQI, and the policies are averaged with the same 2/(k+1) schedule.
PolicyMixture SmmMixture(const DiscreteMdp& mdp, int K, const SmmConfig& config);

// The rescaled SMM reward for a given d_hat.
std::vector<double> SmmReward(std::span<const double> target,
                              std::span<const double> d_hat, double floor);

}  // namespace ddgc

#endif  // DDGC_BASELINES_H_
