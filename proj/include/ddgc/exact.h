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

#ifndef DDGC_EXACT_H_
#define DDGC_EXACT_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ddgc/common.h"
#include "ddgc/mdp.h"
#include "ddgc/policy.h"
#include "ddgc/q_table.h"

namespace ddgc {

enum class DistributionKind { kExact, kEmpirical };

// Probability vector over states: an exact discounted marginal d[pi] or an
// empirical estimate of one.
struct StateDistribution {
  std::vector<double> probs;
  DistributionKind kind = DistributionKind::kExact;

  double Sum() const;
};

// F = J_gamma + I, split into its parts.
struct ObjectiveReport {
  double objective_f = 0.0;
  double return_jgamma = 0.0;   // sum of goal mass
  double diversity_i = 0.0;     // -1/2 * sum of squared goal mass
  std::vector<double> per_goal_mass;  // in increasing goal-state order
};

struct DiversityMetrics {
  double partial_entropy = 0.0;
  double modified_partial_gini = 0.0;
  double return_jgamma = 0.0;
};

class EnumerationTooLarge : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// P_pi[s][s'] = sum_a pi(a|s) P[s][a][s'].
Eigen::MatrixXd StateTransitionMatrix(const DiscreteMdp& mdp,
                                      const TabularPolicy& policy);

// d = (1 - gamma) (I - gamma P_pi^T)^{-1} rho0 by dense LU. Throws
// NumericalError when the solve residual exceeds 1e-8.
StateDistribution ExactD(const DiscreteMdp& mdp, const TabularPolicy& policy);

StateDistribution ExactDMixture(const DiscreteMdp& mdp,
                                const PolicyMixture& mixture);

// (1 - gamma) sum_{t < horizon} gamma^t d^t by forward propagation. Its mass
// is 1 - gamma^horizon, so it is not normalized.
StateDistribution TruncatedD(const DiscreteMdp& mdp,
                             const TabularPolicy& policy, int horizon);
StateDistribution TruncatedDMixture(const DiscreteMdp& mdp,
                                    const PolicyMixture& mixture, int horizon);

ObjectiveReport Objective(const std::vector<bool>& goal_mask,
                          std::span<const double> d);
inline ObjectiveReport Objective(const DiscreteMdp& mdp,
                                 const StateDistribution& d) {
  return Objective(mdp.goal_mask(), d.probs);
}

// sum over goals of d_candidate(s) (1 - d_base(s)).
double GradientPairing(const std::vector<bool>& goal_mask,
                       std::span<const double> d_candidate,
                       std::span<const double> d_base);

// <candidate, grad F(base)> evaluated with exact distributions.
double MixtureGradientPairing(const DiscreteMdp& mdp,
                              const PolicyMixture& candidate,
                              const PolicyMixture& base);

// Natural-log partial entropy, -sum d^2 and sum d, all over goal states.
DiversityMetrics Metrics(std::span<const double> d,
                         const std::vector<bool>& goal_mask);

// 2/lambda^2 [F(m1) + <m2 - m1, grad F(m1)> - F(m2)] with
// m2 = m1 + lambda (m - m1), evaluated with exact distributions. Equals
// sum over goals of (d[m] - d[m1])^2.
double CurvatureWitness(const DiscreteMdp& mdp, const PolicyMixture& m1,
                        const PolicyMixture& m, double lambda);

// All |A|^|S| deterministic policies in lexicographic order (state 0 is the
// most significant digit). Throws EnumerationTooLarge above `limit`.
std::vector<TabularPolicy> EnumerateDeterministicPolicies(
    const DiscreteMdp& mdp, std::int64_t limit = 1'000'000);

struct OptimalMixture {
  PolicyMixture mixture;
  double f_star = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
  int num_vertices = 0;  // distinct goal-mass vectors among policies
};

// Global maximizer of F over policy mixtures. Enumerates deterministic
// policies, then runs pairwise Frank-Wolfe with exact line search over their
// goal-mass vectors until the Frank-Wolfe duality gap drops below tolerance.
OptimalMixture BruteForceOptimalMixture(const DiscreteMdp& mdp,
                                        double tolerance = 1e-8,
                                        std::int64_t limit = 1'000'000);

// Optimal action values for a reward paid on the entered state, r(s'), by
// exact policy iteration.
QTable SolveOptimalQ(const DiscreteMdp& mdp,
                     std::span<const double> next_state_reward);

// sum_t gamma^t r(s_{t+1}) in expectation from rho0.
double DiscountedReturn(const DiscreteMdp& mdp, const TabularPolicy& policy,
                        std::span<const double> next_state_reward);
double DiscountedReturn(const DiscreteMdp& mdp, const PolicyMixture& mixture,
                        std::span<const double> next_state_reward);

}  // namespace ddgc

#endif  // DDGC_EXACT_H_
