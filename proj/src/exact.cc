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

#include "ddgc/exact.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace ddgc {
namespace {

constexpr double kResidualTolerance = 1e-8;

void CheckShape(const DiscreteMdp& mdp, const TabularPolicy& policy) {
  CheckArgument(policy.num_states() == mdp.num_states() &&
                    policy.num_actions() == mdp.num_actions(),
                "policy shape does not match the MDP");
}

Eigen::VectorXd ToEigen(std::span<const double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

std::vector<double> ToStd(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

// Expected immediate next-state reward per state under the policy.
Eigen::VectorXd PolicyReward(const Eigen::MatrixXd& p_pi,
                             std::span<const double> next_state_reward) {
  return p_pi * ToEigen(next_state_reward);
}

Eigen::VectorXd SolveChecked(const Eigen::MatrixXd& a,
                             const Eigen::VectorXd& b) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd x = lu.solve(b);
  const double residual = (a * x - b).lpNorm<Eigen::Infinity>();
  if (!std::isfinite(residual) || residual > kResidualTolerance) {
    throw NumericalError("ill-conditioned occupancy solve (residual " +
                         std::to_string(residual) + ")");
  }
  return x;
}

std::vector<double> GoalMasses(const std::vector<bool>& goal_mask,
                               std::span<const double> d) {
  std::vector<double> masses;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (goal_mask[s]) masses.push_back(d[s]);
  }
  return masses;
}

double GoalObjective(std::span<const double> goal_d) {
  double f = 0.0;
  for (double x : goal_d) f += x - 0.5 * x * x;
  return f;
}

}  // namespace

double StateDistribution::Sum() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

Eigen::MatrixXd StateTransitionMatrix(const DiscreteMdp& mdp,
                                      const TabularPolicy& policy) {
  CheckShape(mdp, policy);
  const int n = mdp.num_states();
  Eigen::MatrixXd p_pi = Eigen::MatrixXd::Zero(n, n);
  for (StateId s = 0; s < n; ++s) {
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      const double pa = policy.Prob(s, a);
      if (pa == 0.0) continue;
      const auto row = mdp.TransitionRow(s, a);
      for (StateId next = 0; next < n; ++next) p_pi(s, next) += pa * row[next];
    }
  }
  return p_pi;
}

StateDistribution ExactD(const DiscreteMdp& mdp, const TabularPolicy& policy) {
  const int n = mdp.num_states();
  const double gamma = mdp.gamma();
  const Eigen::MatrixXd p_pi = StateTransitionMatrix(mdp, policy);
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(n, n) - gamma * p_pi.transpose();
  const Eigen::VectorXd b = (1.0 - gamma) * ToEigen(mdp.rho0());
  return {ToStd(SolveChecked(a, b)), DistributionKind::kExact};
}

StateDistribution ExactDMixture(const DiscreteMdp& mdp,
                                const PolicyMixture& mixture) {
  std::vector<double> d(mdp.num_states(), 0.0);
  for (const auto& c : mixture.components()) {
    if (c.weight == 0.0) continue;
    const auto dc = ExactD(mdp, c.policy);
    for (std::size_t s = 0; s < d.size(); ++s) d[s] += c.weight * dc.probs[s];
  }
  return {std::move(d), DistributionKind::kExact};
}

StateDistribution TruncatedD(const DiscreteMdp& mdp,
                             const TabularPolicy& policy, int horizon) {
  CheckArgument(horizon >= 0, "horizon must be non-negative");
  const double gamma = mdp.gamma();
  const Eigen::MatrixXd p_pi_t = StateTransitionMatrix(mdp, policy).transpose();
  Eigen::VectorXd dt = ToEigen(mdp.rho0());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(mdp.num_states());
  double discount = 1.0;
  for (int t = 0; t < horizon; ++t) {
    acc += discount * dt;
    dt = p_pi_t * dt;
    discount *= gamma;
  }
  return {ToStd((1.0 - gamma) * acc), DistributionKind::kExact};
}

StateDistribution TruncatedDMixture(const DiscreteMdp& mdp,
                                    const PolicyMixture& mixture,
                                    int horizon) {
  std::vector<double> d(mdp.num_states(), 0.0);
  for (const auto& c : mixture.components()) {
    const auto dc = TruncatedD(mdp, c.policy, horizon);
    for (std::size_t s = 0; s < d.size(); ++s) d[s] += c.weight * dc.probs[s];
  }
  return {std::move(d), DistributionKind::kExact};
}

ObjectiveReport Objective(const std::vector<bool>& goal_mask,
                          std::span<const double> d) {
  CheckArgument(goal_mask.size() == d.size(),
                "distribution and goal mask differ in size");
  ObjectiveReport report;
  report.per_goal_mass = GoalMasses(goal_mask, d);
  double squares = 0.0;
  for (double x : report.per_goal_mass) {
    report.return_jgamma += x;
    squares += x * x;
  }
  report.diversity_i = -0.5 * squares;
  report.objective_f = GoalObjective(report.per_goal_mass);
  return report;
}

double GradientPairing(const std::vector<bool>& goal_mask,
                       std::span<const double> d_candidate,
                       std::span<const double> d_base) {
  CheckArgument(d_candidate.size() == goal_mask.size() &&
                    d_base.size() == goal_mask.size(),
                "distribution and goal mask differ in size");
  double pairing = 0.0;
  for (std::size_t s = 0; s < goal_mask.size(); ++s) {
    if (goal_mask[s]) pairing += d_candidate[s] * (1.0 - d_base[s]);
  }
  return pairing;
}

double MixtureGradientPairing(const DiscreteMdp& mdp,
                              const PolicyMixture& candidate,
                              const PolicyMixture& base) {
  return GradientPairing(mdp.goal_mask(), ExactDMixture(mdp, candidate).probs,
                         ExactDMixture(mdp, base).probs);
}

DiversityMetrics Metrics(std::span<const double> d,
                         const std::vector<bool>& goal_mask) {
  CheckArgument(goal_mask.size() == d.size(),
                "distribution and goal mask differ in size");
  DiversityMetrics m;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (!goal_mask[s]) continue;
    const double x = d[s];
    if (x > 0.0) m.partial_entropy -= x * std::log(x);
    m.modified_partial_gini -= x * x;
    m.return_jgamma += x;
  }
  return m;
}

double CurvatureWitness(const DiscreteMdp& mdp, const PolicyMixture& m1,
                        const PolicyMixture& m, double lambda) {
  CheckArgument(lambda > 0.0 && lambda <= 1.0, "lambda must be in (0, 1]");
  const auto& goals = mdp.goal_mask();
  const auto d1 = ExactDMixture(mdp, m1).probs;
  const auto d = ExactDMixture(mdp, m).probs;
  std::vector<double> d2(d1.size());
  for (std::size_t s = 0; s < d1.size(); ++s) {
    d2[s] = d1[s] + lambda * (d[s] - d1[s]);
  }
  const double f1 = Objective(goals, d1).objective_f;
  const double f2 = Objective(goals, d2).objective_f;
  // <m2 - m1, grad F(m1)> is linear in the mixture, so it is the difference
  // of the two vertex pairings.
  const double pairing =
      GradientPairing(goals, d2, d1) - GradientPairing(goals, d1, d1);
  return 2.0 / (lambda * lambda) * (f1 + pairing - f2);
}

std::vector<TabularPolicy> EnumerateDeterministicPolicies(
    const DiscreteMdp& mdp, std::int64_t limit) {
  const int n = mdp.num_states();
  const int k = mdp.num_actions();
  double count = std::pow(static_cast<double>(k), n);
  if (count > static_cast<double>(limit)) {
    throw EnumerationTooLarge("|A|^|S| = " + std::to_string(count) +
                              " exceeds the enumeration limit");
  }
  std::vector<TabularPolicy> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<ActionId> actions(n, 0);
  while (true) {
    out.push_back(TabularPolicy::Deterministic(k, actions));
    int pos = n - 1;
    while (pos >= 0 && actions[pos] == k - 1) actions[pos--] = 0;
    if (pos < 0) break;
    ++actions[pos];
  }
  return out;
}

OptimalMixture BruteForceOptimalMixture(const DiscreteMdp& mdp,
                                        double tolerance, std::int64_t limit) {
  CheckArgument(tolerance > 0.0, "tolerance must be positive");
  const auto policies = EnumerateDeterministicPolicies(mdp, limit);
  const auto& goals = mdp.goal_mask();

  // Deduplicate policies by their goal-mass vector; F only sees goal mass.
  std::map<std::vector<double>, std::size_t> seen;
  std::vector<std::size_t> vertex_policy;
  std::vector<std::vector<double>> vertex;
  for (std::size_t i = 0; i < policies.size(); ++i) {
    auto g = GoalMasses(goals, ExactD(mdp, policies[i]).probs);
    for (double& x : g) x = std::round(x * 1e14) / 1e14;
    if (seen.emplace(g, i).second) {
      vertex_policy.push_back(i);
      vertex.push_back(std::move(g));
    }
  }
  const std::size_t nv = vertex.size();
  const std::size_t ng = goals.empty() ? 0 : vertex.front().size();

  auto objective = [&](const std::vector<double>& y) { return GoalObjective(y); };

  // Start from the best single vertex.
  std::size_t start = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nv; ++j) {
    const double f = objective(vertex[j]);
    if (f > best) {
      best = f;
      start = j;
    }
  }
  std::vector<double> x(nv, 0.0);
  x[start] = 1.0;
  std::vector<double> y = vertex[start];

  OptimalMixture result{PolicyMixture(policies[vertex_policy[start]])};
  const int max_iterations = 1'000'000;
  std::vector<double> grad(nv);
  double gap = 0.0;
  int it = 0;
  for (; it < max_iterations; ++it) {
    double xg = 0.0;
    std::size_t fw = 0;
    std::size_t away = start;
    double fw_val = -std::numeric_limits<double>::infinity();
    double away_val = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nv; ++j) {
      double g = 0.0;
      for (std::size_t i = 0; i < ng; ++i) g += vertex[j][i] * (1.0 - y[i]);
      grad[j] = g;
      xg += x[j] * g;
      if (g > fw_val) {
        fw_val = g;
        fw = j;
      }
      if (x[j] > 0.0 && g < away_val) {
        away_val = g;
        away = j;
      }
    }
    gap = fw_val - xg;
    if (gap < tolerance || fw == away) break;
    // Move weight from the away vertex to the Frank-Wolfe vertex; F is
    // quadratic along the segment so the line search is closed form.
    double dir_dot_grad = 0.0;
    double dir_norm = 0.0;
    for (std::size_t i = 0; i < ng; ++i) {
      const double dir = vertex[fw][i] - vertex[away][i];
      dir_dot_grad += dir * (1.0 - y[i]);
      dir_norm += dir * dir;
    }
    if (dir_norm == 0.0) break;
    const double step = std::clamp(dir_dot_grad / dir_norm, 0.0, x[away]);
    if (step <= 0.0) break;
    x[fw] += step;
    x[away] -= step;
    if (x[away] < 1e-15) {
      x[fw] += x[away];
      x[away] = 0.0;
    }
    for (std::size_t i = 0; i < ng; ++i) {
      y[i] += step * (vertex[fw][i] - vertex[away][i]);
    }
  }

  std::vector<PolicyMixture::Component> comps;
  double total = 0.0;
  for (std::size_t j = 0; j < nv; ++j) {
    if (x[j] > 0.0) total += x[j];
  }
  for (std::size_t j = 0; j < nv; ++j) {
    if (x[j] > 0.0) comps.push_back({policies[vertex_policy[j]], x[j] / total});
  }
  result.mixture = PolicyMixture(std::move(comps));
  result.f_star = Objective(goals, ExactDMixture(mdp, result.mixture).probs)
                      .objective_f;
  result.duality_gap = gap;
  result.iterations = it;
  result.num_vertices = static_cast<int>(nv);
  return result;
}

QTable SolveOptimalQ(const DiscreteMdp& mdp,
                     std::span<const double> next_state_reward) {
  const int n = mdp.num_states();
  const int k = mdp.num_actions();
  const double gamma = mdp.gamma();
  CheckArgument(next_state_reward.size() == static_cast<std::size_t>(n),
                "reward vector has wrong size");
  const Eigen::VectorXd r = ToEigen(next_state_reward);

  auto q_from_v = [&](const Eigen::VectorXd& v) {
    std::vector<double> q(static_cast<std::size_t>(n) * k);
    for (StateId s = 0; s < n; ++s) {
      for (ActionId a = 0; a < k; ++a) {
        const auto row = mdp.TransitionRow(s, a);
        double value = 0.0;
        for (StateId next = 0; next < n; ++next) {
          value += row[next] * (r[next] + gamma * v[next]);
        }
        q[static_cast<std::size_t>(s) * k + a] = value;
      }
    }
    return q;
  };

  std::vector<ActionId> actions(n, 0);
  std::vector<double> q;
  for (int iter = 0; iter < 10'000; ++iter) {
    const auto policy = TabularPolicy::Deterministic(k, actions);
    const Eigen::MatrixXd p_pi = StateTransitionMatrix(mdp, policy);
    const Eigen::VectorXd v = SolveChecked(
        Eigen::MatrixXd::Identity(n, n) - gamma * p_pi, PolicyReward(p_pi, next_state_reward));
    q = q_from_v(v);
    bool stable = true;
    for (StateId s = 0; s < n; ++s) {
      ActionId best = actions[s];
      for (ActionId a = 0; a < k; ++a) {
        if (q[static_cast<std::size_t>(s) * k + a] >
            q[static_cast<std::size_t>(s) * k + best] + 1e-12) {
          best = a;
        }
      }
      if (best != actions[s]) {
        actions[s] = best;
        stable = false;
      }
    }
    if (stable) break;
  }
  QTable table(n, k, gamma);
  for (StateId s = 0; s < n; ++s) {
    for (ActionId a = 0; a < k; ++a) {
      table.Set(s, a, q[static_cast<std::size_t>(s) * k + a]);
    }
  }
  return table;
}

double DiscountedReturn(const DiscreteMdp& mdp, const TabularPolicy& policy,
                        std::span<const double> next_state_reward) {
  const int n = mdp.num_states();
  const Eigen::MatrixXd p_pi = StateTransitionMatrix(mdp, policy);
  const Eigen::VectorXd v =
      SolveChecked(Eigen::MatrixXd::Identity(n, n) - mdp.gamma() * p_pi,
                   PolicyReward(p_pi, next_state_reward));
  return ToEigen(mdp.rho0()).dot(v);
}

double DiscountedReturn(const DiscreteMdp& mdp, const PolicyMixture& mixture,
                        std::span<const double> next_state_reward) {
  double total = 0.0;
  for (const auto& c : mixture.components()) {
    total += c.weight * DiscountedReturn(mdp, c.policy, next_state_reward);
  }
  return total;
}

}  // namespace ddgc
