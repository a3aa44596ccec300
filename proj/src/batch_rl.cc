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

#include "ddgc/batch_rl.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace ddgc {
namespace {

struct PairStats {
  int count = 0;
  double reward_sum = 0.0;
  std::vector<std::pair<StateId, int>> successors;
};

// Cholesky-factored ridge normal equations for a fixed design matrix.
class RidgeSolver {
 public:
  RidgeSolver(const Eigen::MatrixXd& design, double ridge) : design_(design) {
    CheckArgument(ridge >= 0.0, "ridge coefficient must be non-negative");
    Eigen::MatrixXd gram = design.transpose() * design;
    gram.diagonal().array() += ridge;
    ldlt_.compute(gram);
    if (ldlt_.info() != Eigen::Success) {
      throw NumericalError("singular regression in critic fit");
    }
  }

  Eigen::VectorXd Solve(const Eigen::VectorXd& targets) const {
    Eigen::VectorXd w = ldlt_.solve(design_.transpose() * targets);
    if (!w.allFinite()) throw NumericalError("singular regression in critic fit");
    return w;
  }

 private:
  const Eigen::MatrixXd& design_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
};

}  // namespace

FqiResult FqiTabular(const TrajectoryBatch& batch, int num_states,
                     int num_actions, double gamma, int fqi_iterations) {
  CheckArgument(!batch.empty(), "FQI needs a non-empty batch");
  CheckArgument(fqi_iterations >= 1, "N_FQI must be >= 1");
  std::vector<std::map<StateId, int>> successor_counts(
      static_cast<std::size_t>(num_states) * num_actions);
  std::vector<PairStats> stats(successor_counts.size());
  batch.ForEachStep([&](const Transition& step) {
    CheckArgument(step.s >= 0 && step.s < num_states && step.s_next >= 0 &&
                      step.s_next < num_states && step.a >= 0 &&
                      step.a < num_actions,
                  "batch transition out of range");
    const std::size_t i = static_cast<std::size_t>(step.s) * num_actions + step.a;
    ++stats[i].count;
    stats[i].reward_sum += step.r;
    ++successor_counts[i][step.s_next];
  });
  for (std::size_t i = 0; i < stats.size(); ++i) {
    stats[i].successors.assign(successor_counts[i].begin(),
                               successor_counts[i].end());
  }

  QTable q(num_states, num_actions, gamma);
  std::vector<double> v(num_states, 0.0);
  for (int iter = 0; iter < fqi_iterations; ++iter) {
    for (StateId s = 0; s < num_states; ++s) v[s] = q.MaxValue(s);
    QTable next(num_states, num_actions, gamma);
    for (StateId s = 0; s < num_states; ++s) {
      for (ActionId a = 0; a < num_actions; ++a) {
        const auto& st = stats[static_cast<std::size_t>(s) * num_actions + a];
        if (st.count == 0) continue;
        double total = st.reward_sum;
        for (const auto& [to, count] : st.successors) {
          total += gamma * count * v[to];
        }
        next.Set(s, a, total / st.count);
      }
    }
    q = std::move(next);
  }
  TabularPolicy policy = GreedyPolicy(q);
  return {std::move(q), std::move(policy)};
}

LinearQ::LinearQ(Eigen::VectorXd weights, double gamma)
    : weights_(std::move(weights)), v_max_(1.0 / (1.0 - gamma)) {
  CheckArgument(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
}

double LinearQ::Value(const Eigen::Ref<const Eigen::VectorXd>& phi) const {
  return std::clamp(weights_.dot(phi), 0.0, v_max_);
}

DiscreteFeatures DiscreteFeatures::OneHot(int num_states, int num_actions) {
  DiscreteFeatures f;
  f.dim = num_states * num_actions;
  f.fill = [num_actions](StateId s, ActionId a,
                         Eigen::Ref<Eigen::VectorXd> out) {
    out.setZero();
    out[s * num_actions + a] = 1.0;
  };
  return f;
}

DiscreteActorCriticResult FittedActorCritic(
    const TrajectoryBatch& batch, const DiscreteFeatures& features,
    int num_states, int num_actions, double gamma, int fqi_iterations,
    const ActorCriticOptions& options) {
  CheckArgument(!batch.empty(), "actor-critic needs a non-empty batch");
  CheckArgument(fqi_iterations >= 1, "N_FQI must be >= 1");
  const auto n = static_cast<Eigen::Index>(batch.num_transitions());
  CheckArgument(features.dim >= 1 && features.dim <= n,
                "feature dimension must not exceed the batch size");

  Eigen::MatrixXd design(n, features.dim);
  Eigen::VectorXd rewards(n);
  std::vector<StateId> next_states;
  next_states.reserve(static_cast<std::size_t>(n));
  Eigen::Index row = 0;
  batch.ForEachStep([&](const Transition& step) {
    Eigen::VectorXd phi(features.dim);
    features.fill(step.s, step.a, phi);
    design.row(row) = phi.transpose();
    rewards[row] = step.r;
    next_states.push_back(step.s_next);
    ++row;
  });
  const RidgeSolver solver(design, options.ridge);

  // Every (s, a) feature vector, for greedy improvement and bootstrapping.
  std::vector<Eigen::VectorXd> table(static_cast<std::size_t>(num_states) *
                                     num_actions);
  for (StateId s = 0; s < num_states; ++s) {
    for (ActionId a = 0; a < num_actions; ++a) {
      Eigen::VectorXd phi(features.dim);
      features.fill(s, a, phi);
      table[static_cast<std::size_t>(s) * num_actions + a] = std::move(phi);
    }
  }

  LinearQ critic(Eigen::VectorXd::Zero(features.dim), gamma);
  std::vector<ActionId> actions(num_states, 0);
  auto improve = [&]() {
    for (StateId s = 0; s < num_states; ++s) {
      ActionId best = 0;
      double best_value = critic.Value(table[static_cast<std::size_t>(s) * num_actions]);
      for (ActionId a = 1; a < num_actions; ++a) {
        const double v =
            critic.Value(table[static_cast<std::size_t>(s) * num_actions + a]);
        if (v > best_value) {
          best_value = v;
          best = a;
        }
      }
      actions[s] = best;
    }
  };
  improve();
  Eigen::VectorXd targets(n);
  for (int iter = 0; iter < fqi_iterations; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const StateId s2 = next_states[static_cast<std::size_t>(i)];
      targets[i] =
          rewards[i] +
          gamma * critic.Value(
                      table[static_cast<std::size_t>(s2) * num_actions + actions[s2]]);
    }
    critic = LinearQ(solver.Solve(targets), gamma);
    improve();
  }
  return {std::move(critic), TabularPolicy::Deterministic(num_actions, actions)};
}

RbfGrid::RbfGrid(int per_dim, double width_scale) : per_dim_(per_dim) {
  CheckArgument(per_dim >= 2, "RBF grid needs at least two centers per axis");
  CheckArgument(width_scale > 0.0, "RBF width must be positive");
  width_ = width_scale / (per_dim - 1);
}

void RbfGrid::Eval(const Vec2& s, Eigen::Ref<Eigen::VectorXd> out) const {
  const double spacing = 1.0 / (per_dim_ - 1);
  const double inv = 1.0 / (2.0 * width_ * width_);
  double total = 0.0;
  for (int i = 0; i < per_dim_; ++i) {
    const double dx = s[0] - i * spacing;
    for (int j = 0; j < per_dim_; ++j) {
      const double dy = s[1] - j * spacing;
      const double v = std::exp(-(dx * dx + dy * dy) * inv);
      out[i * per_dim_ + j] = v;
      total += v;
    }
  }
  out /= total;
}

Eigen::VectorXd RbfGrid::Eval(const Vec2& s) const {
  Eigen::VectorXd out(dim());
  Eval(s, out);
  return out;
}

void PointMassFeatures::Fill(const Vec2& s, const Vec2& a,
                             Eigen::Ref<Eigen::VectorXd> out) const {
  const Eigen::VectorXd rbf = grid_.Eval(s);
  const double poly[kActionTerms] = {1.0,         a[0],        a[1],
                                     a[0] * a[0], a[1] * a[1], a[0] * a[1]};
  for (int m = 0; m < grid_.dim(); ++m) {
    for (int j = 0; j < kActionTerms; ++j) {
      out[m * kActionTerms + j] = rbf[m] * poly[j];
    }
  }
}

Eigen::VectorXd PointMassFeatures::Eval(const Vec2& s, const Vec2& a) const {
  Eigen::VectorXd out(dim());
  Fill(s, a, out);
  return out;
}

Vec2 PointMassFeatures::ActionGradient(const Eigen::VectorXd& weights,
                                       const Eigen::VectorXd& rbf,
                                       const Vec2& a) const {
  Vec2 g{0.0, 0.0};
  for (int m = 0; m < grid_.dim(); ++m) {
    const double* w = weights.data() + m * kActionTerms;
    g[0] += rbf[m] * (w[1] + 2.0 * w[3] * a[0] + w[5] * a[1]);
    g[1] += rbf[m] * (w[2] + 2.0 * w[4] * a[1] + w[5] * a[0]);
  }
  return g;
}

ParametricPolicy::ParametricPolicy(RbfGrid grid, Eigen::MatrixXd theta)
    : grid_(grid), theta_(std::move(theta)) {
  CheckArgument(theta_.rows() == 2 && theta_.cols() == grid_.dim(),
                "policy parameters must be 2 x grid.dim()");
}

ParametricPolicy ParametricPolicy::UniformRandom(RbfGrid grid) {
  ParametricPolicy p(grid, Eigen::MatrixXd::Zero(2, grid.dim()));
  p.random_ = true;
  return p;
}

ParametricPolicy ParametricPolicy::Zero(RbfGrid grid) {
  return ParametricPolicy(grid, Eigen::MatrixXd::Zero(2, grid.dim()));
}

Vec2 ParametricPolicy::Act(const Vec2& s, Rng& rng) const {
  if (random_) {
    return {2.0 * UniformDouble(rng) - 1.0, 2.0 * UniformDouble(rng) - 1.0};
  }
  return Mean(s);
}

Vec2 ParametricPolicy::Mean(const Vec2& s) const {
  if (random_) return {0.0, 0.0};
  return MeanFromRbf(grid_.Eval(s));
}

Vec2 ParametricPolicy::MeanFromRbf(const Eigen::VectorXd& rbf) const {
  const Eigen::Vector2d pre = theta_ * rbf;
  return {std::tanh(pre[0]), std::tanh(pre[1])};
}

ContinuousActorCriticResult FittedActorCritic(
    const ContinuousBatch& batch, const PointMassFeatures& features,
    double gamma, int fqi_iterations, const ActorCriticOptions& options,
    const ParametricPolicy* initial) {
  CheckArgument(!batch.empty(), "actor-critic needs a non-empty batch");
  CheckArgument(fqi_iterations >= 1, "N_FQI must be >= 1");
  const auto n = static_cast<Eigen::Index>(batch.num_transitions());
  const int d = features.dim();
  CheckArgument(d <= n, "feature dimension must not exceed the batch size");
  const RbfGrid& grid = features.grid();
  const int m = grid.dim();

  Eigen::MatrixXd design(n, d);
  Eigen::MatrixXd rbf_s(m, n);
  Eigen::MatrixXd rbf_next(m, n);
  Eigen::VectorXd rewards(n);
  std::vector<Vec2> next_states;
  next_states.reserve(static_cast<std::size_t>(n));
  Eigen::Index row = 0;
  batch.ForEachStep([&](const ContinuousTransition& step) {
    Eigen::VectorXd phi(d);
    features.Fill(step.s, step.a, phi);
    design.row(row) = phi.transpose();
    rbf_s.col(row) = grid.Eval(step.s);
    rbf_next.col(row) = grid.Eval(step.s_next);
    rewards[row] = step.r;
    next_states.push_back(step.s_next);
    ++row;
  });
  const RidgeSolver solver(design, options.ridge);

  ParametricPolicy policy =
      (initial != nullptr && !initial->is_random() &&
       initial->grid().dim() == m)
          ? *initial
          : ParametricPolicy::Zero(grid);
  LinearQ critic(Eigen::VectorXd::Zero(d), gamma);
  Eigen::VectorXd targets(n);
  Eigen::VectorXd phi(d);

  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  Eigen::MatrixXd theta = policy.theta();
  Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(2, m);
  Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(2, m);
  int adam_t = 0;

  for (int iter = 0; iter < fqi_iterations; ++iter) {
    // Critic: regress onto r + gamma f_{k-1}(s', pi_{k-1}(s')).
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vec2 a2 = policy.MeanFromRbf(rbf_next.col(i));
      features.Fill(next_states[static_cast<std::size_t>(i)], a2, phi);
      targets[i] = rewards[i] + gamma * critic.Value(phi);
    }
    critic = LinearQ(solver.Solve(targets), gamma);

    // Actor: ascend the mean critic value at the batch states.
    for (int step = 0; step < options.policy_steps; ++step) {
      Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(2, m);
      for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd rbf = rbf_s.col(i);
        const Eigen::Vector2d pre = theta * rbf;
        const Vec2 a{std::tanh(pre[0]), std::tanh(pre[1])};
        const Vec2 g = features.ActionGradient(critic.weights(), rbf, a);
        grad.row(0) += (g[0] * (1.0 - a[0] * a[0])) * rbf.transpose();
        grad.row(1) += (g[1] * (1.0 - a[1] * a[1])) * rbf.transpose();
      }
      grad /= static_cast<double>(n);
      ++adam_t;
      m1 = beta1 * m1 + (1.0 - beta1) * grad;
      m2 = beta2 * m2 + (1.0 - beta2) * grad.cwiseProduct(grad);
      const double c1 = 1.0 - std::pow(beta1, adam_t);
      const double c2 = 1.0 - std::pow(beta2, adam_t);
      theta.array() += options.learning_rate * (m1.array() / c1) /
                       ((m2.array() / c2).sqrt() + eps);
    }
    policy = ParametricPolicy(grid, theta);
  }
  return {std::move(critic), std::move(policy)};
}

}  // namespace ddgc
