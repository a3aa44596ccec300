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

#ifndef DDGC_DDGC_H_
#define DDGC_DDGC_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddgc/batch_rl.h"
#include "ddgc/estimator.h"
#include "ddgc/mdp.h"
#include "ddgc/point_mass.h"
#include "ddgc/policy.h"

namespace ddgc {

enum class ExplorationKind { kNone, kRandom, kCountBonus };

ExplorationKind ParseExplorationKind(const std::string& name);
std::string ToString(ExplorationKind kind);
EstimatorConvention ParseEstimatorConvention(const std::string& name);
std::string ToString(EstimatorConvention convention);

struct DdgcConfig {
  int K = 8;
  int N_T = 200;
  int H = 30;
  int N_FQI = 50;
  // Defaults to the environment discount.
  std::optional<double> gamma;
  std::uint64_t seed = 0;
  ExplorationKind exploration = ExplorationKind::kRandom;
  // Episodes in the exploratory batch; -1 means N_T / 4.
  int exploration_batch_size = -1;
  // Cells per axis of the continuous discretizer h_d.
  int discretization_precision = 10;
  EstimatorConvention estimator_convention = EstimatorConvention::kNextState;
  // Goal buffer capacity in episodes (continuous only), 0 = unlimited.
  int goal_buffer_capacity = 0;
  // Record the exact F of every iterate (discrete only).
  bool track_exact = true;
  // Continuous only.
  ActorCriticOptions actor_critic;
  int rbf_per_dim = 6;

  // Throws InvalidArgument if any size is below 1.
  void Validate() const;
  int ExplorationEpisodes() const;
};

struct IterationRecord {
  int iteration = 0;
  // d_hat over states (discrete) or over cells (continuous).
  std::vector<double> d_hat;
  std::vector<double> reward;
  // Index of the iteration's policy inside the final mixture.
  int policy_index = 0;
  std::vector<double> weights;
  std::optional<double> exact_f;
  // Exact d of the updated mixture (discrete runs with track_exact).
  std::vector<double> exact_d;
  double wall_time_seconds = 0.0;
};

struct DdgcResult {
  PolicyMixture mixture;
  std::vector<IterationRecord> trace;
};

// Frank-Wolfe over policy mixtures with sampled batches, the estimated
// visitation d_hat, reward 1 - d_hat on goals and tabular FQI as the linear
// oracle. pi_0 is uniform. Exploration episodes are relabeled and added to
// the FQI batch only; they never enter d_hat.
DdgcResult RunDdgcDiscrete(const DiscreteMdp& mdp, const DdgcConfig& config);

struct ExactDdgcResult {
  PolicyMixture mixture;
  // F(pi_k) for k = 1..K.
  std::vector<double> objective;
  // f_star - F(pi_k), filled when f_star is given.
  std::vector<double> gaps;
  // d[pi_k] for k = 1..K.
  std::vector<std::vector<double>> distributions;
};

// The same loop with exact d[pi_{k-1}] and an exact optimal policy for
// r_k(s) = 1 - d(s) on goals, so every linear step is solved without error.
ExactDdgcResult RunExactDdgc(const DiscreteMdp& mdp, int K,
                             std::optional<double> f_star = std::nullopt);

struct ContinuousDdgcResult {
  Mixture<ParametricPolicy> mixture;
  std::vector<IterationRecord> trace;
  // Goal-buffer size after each iteration.
  std::vector<int> buffer_sizes;
};

// Continuous variant: exploratory batch, goal buffer, grid-cell d_hat and the
// fitted actor-critic on the union of on-policy, exploratory and buffered
// data.
ContinuousDdgcResult RunDdgcContinuous(const PointMassEnv& env,
                                       const DdgcConfig& config);

}  // namespace ddgc

#endif  // DDGC_DDGC_H_
