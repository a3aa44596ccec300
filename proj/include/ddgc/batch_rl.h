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

#ifndef DDGC_BATCH_RL_H_
#define DDGC_BATCH_RL_H_

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ddgc/common.h"
#include "ddgc/point_mass.h"
#include "ddgc/policy.h"
#include "ddgc/q_table.h"
#include "ddgc/sampling.h"

namespace ddgc {

struct FqiResult {
  QTable q;
  TabularPolicy policy;
};

// Tabular fitted Q-iteration on a fixed batch:
//   Q_i(s, a) = mean over batch transitions from (s, a) of
//               r + gamma * max_a' Q_{i-1}(s', a'),
// starting from Q_0 = 0. Pairs absent from the batch keep 0. Returns the last
// iterate and its greedy policy. Throws InvalidArgument on an empty batch.
FqiResult FqiTabular(const TrajectoryBatch& batch, int num_states,
                     int num_actions, double gamma, int fqi_iterations);

// Linear action-value predictor f(x) = w . phi(x), clipped to [0, V_max] at
// evaluation.
class LinearQ {
 public:
  LinearQ(Eigen::VectorXd weights, double gamma);

  const Eigen::VectorXd& weights() const { return weights_; }
  double v_max() const { return v_max_; }
  double Raw(const Eigen::Ref<const Eigen::VectorXd>& phi) const {
    return weights_.dot(phi);
  }
  double Value(const Eigen::Ref<const Eigen::VectorXd>& phi) const;

 private:
  Eigen::VectorXd weights_;
  double v_max_;
};

// Feature map over a finite state-action space.
struct DiscreteFeatures {
  int dim = 0;
  std::function<void(StateId, ActionId, Eigen::Ref<Eigen::VectorXd>)> fill;

  static DiscreteFeatures OneHot(int num_states, int num_actions);
};

struct ActorCriticOptions {
  double ridge = 1e-6;
  // Continuous policy improvement: Adam steps per outer iteration.
  int policy_steps = 60;
  double learning_rate = 0.05;
};

struct DiscreteActorCriticResult {
  LinearQ critic;
  TabularPolicy policy;
};

// Fitted actor-critic with a linear critic over a discrete action set. The
// critic solves the ridge regression onto r + gamma f_{k-1}(s', pi_{k-1}(s'))
// and the actor is the per-state argmax of f_k (ties to the lowest action).
// With one-hot features this reproduces FqiTabular up to the ridge shrinkage.
DiscreteActorCriticResult FittedActorCritic(
    const TrajectoryBatch& batch, const DiscreteFeatures& features,
    int num_states, int num_actions, double gamma, int fqi_iterations,
    const ActorCriticOptions& options = {});

// Normalized Gaussian radial basis over a per_dim x per_dim grid covering the
// unit square. Values sum to one at every point.
class RbfGrid {
 public:
  explicit RbfGrid(int per_dim = 6, double width_scale = 0.6);

  int per_dim() const { return per_dim_; }
  int dim() const { return per_dim_ * per_dim_; }
  double width() const { return width_; }
  void Eval(const Vec2& s, Eigen::Ref<Eigen::VectorXd> out) const;
  Eigen::VectorXd Eval(const Vec2& s) const;

 private:
  int per_dim_;
  double width_;
};

// phi(s, a) = rbf(s) (x) [1, a0, a1, a0^2, a1^2, a0 a1].
class PointMassFeatures {
 public:
  static constexpr int kActionTerms = 6;

  explicit PointMassFeatures(RbfGrid grid = RbfGrid()) : grid_(grid) {}

  const RbfGrid& grid() const { return grid_; }
  int dim() const { return grid_.dim() * kActionTerms; }
  void Fill(const Vec2& s, const Vec2& a, Eigen::Ref<Eigen::VectorXd> out) const;
  Eigen::VectorXd Eval(const Vec2& s, const Vec2& a) const;
  // d/da of w . phi(s, a), given rbf(s).
  Vec2 ActionGradient(const Eigen::VectorXd& weights,
                      const Eigen::VectorXd& rbf, const Vec2& a) const;

 private:
  RbfGrid grid_;
};

// Deterministic policy a = tanh(theta * rbf(s)), which always lies inside the
// open action box. The UniformRandom() variant ignores theta and draws
// actions uniformly from [-1, 1]^2.
class ParametricPolicy {
 public:
  ParametricPolicy(RbfGrid grid, Eigen::MatrixXd theta);
  static ParametricPolicy UniformRandom(RbfGrid grid = RbfGrid());
  static ParametricPolicy Zero(RbfGrid grid = RbfGrid());

  bool is_random() const { return random_; }
  const RbfGrid& grid() const { return grid_; }
  const Eigen::MatrixXd& theta() const { return theta_; }

  Vec2 Act(const Vec2& s, Rng& rng) const;
  // Deterministic action; for the random variant this is the zero action.
  Vec2 Mean(const Vec2& s) const;
  Vec2 MeanFromRbf(const Eigen::VectorXd& rbf) const;

 private:
  RbfGrid grid_;
  Eigen::MatrixXd theta_;  // 2 x grid.dim()
  bool random_ = false;
};

struct ContinuousActorCriticResult {
  LinearQ critic;
  ParametricPolicy policy;
};

// Fitted actor-critic for the point mass. Alternates the ridge critic fit with
// Adam ascent on sum_{s in batch} f_k(s, pi(s)) using the analytic action
// gradient of the linear critic. `initial` seeds the actor parameters.
ContinuousActorCriticResult FittedActorCritic(
    const ContinuousBatch& batch, const PointMassFeatures& features,
    double gamma, int fqi_iterations, const ActorCriticOptions& options = {},
    const ParametricPolicy* initial = nullptr);

}  // namespace ddgc

#endif  // DDGC_BATCH_RL_H_
