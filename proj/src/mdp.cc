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

#include "ddgc/mdp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ddgc {
namespace {

void CheckDistribution(std::span<const double> row, double tol,
                       const std::string& what) {
  double total = 0.0;
  for (double p : row) {
    CheckArgument(std::isfinite(p) && p >= 0.0,
                  what + " has a negative or non-finite entry");
    total += p;
  }
  CheckArgument(std::abs(total - 1.0) <= tol, what + " does not sum to 1");
}

}  // namespace

DiscreteMdp::DiscreteMdp(int num_states, int num_actions,
                         std::vector<double> transition,
                         std::vector<bool> goal, double gamma,
                         std::vector<double> rho0)
    : num_states_(num_states),
      num_actions_(num_actions),
      transition_(std::move(transition)),
      goal_(std::move(goal)),
      gamma_(gamma),
      rho0_(std::move(rho0)) {
  CheckArgument(num_states_ > 0, "num_states must be positive");
  CheckArgument(num_actions_ > 0, "num_actions must be positive");
  const std::size_t expected = static_cast<std::size_t>(num_states_) *
                               num_actions_ * num_states_;
  CheckArgument(transition_.size() == expected,
                "transition tensor has wrong size");
  CheckArgument(goal_.size() == static_cast<std::size_t>(num_states_),
                "goal mask has wrong size");
  CheckArgument(rho0_.size() == static_cast<std::size_t>(num_states_),
                "rho0 has wrong size");
  CheckArgument(gamma_ >= 0.0 && gamma_ < 1.0, "gamma must lie in [0, 1)");
  for (StateId s = 0; s < num_states_; ++s) {
    for (ActionId a = 0; a < num_actions_; ++a) {
      CheckDistribution(TransitionRow(s, a), kRowTolerance,
                        "P[" + std::to_string(s) + "][" + std::to_string(a) +
                            "]");
    }
  }
  CheckDistribution(rho0_, kRowTolerance, "rho0");
}

DiscreteMdp DiscreteMdp::Deterministic(
    const std::vector<std::vector<StateId>>& next, std::vector<bool> goal,
    double gamma, StateId start) {
  const int num_states = static_cast<int>(next.size());
  CheckArgument(num_states > 0, "deterministic MDP needs at least one state");
  const int num_actions = static_cast<int>(next.front().size());
  std::vector<double> p(static_cast<std::size_t>(num_states) * num_actions *
                        num_states);
  for (StateId s = 0; s < num_states; ++s) {
    CheckArgument(static_cast<int>(next[s].size()) == num_actions,
                  "every state needs the same number of actions");
    for (ActionId a = 0; a < num_actions; ++a) {
      const StateId to = next[s][a];
      CheckArgument(to >= 0 && to < num_states, "successor out of range");
      p[(static_cast<std::size_t>(s) * num_actions + a) * num_states + to] =
          1.0;
    }
  }
  CheckArgument(start >= 0 && start < num_states, "start state out of range");
  std::vector<double> rho0(num_states, 0.0);
  rho0[start] = 1.0;
  return DiscreteMdp(num_states, num_actions, std::move(p), std::move(goal),
                     gamma, std::move(rho0));
}

std::vector<StateId> DiscreteMdp::GoalStates() const {
  std::vector<StateId> goals;
  for (StateId s = 0; s < num_states_; ++s) {
    if (goal_[s]) goals.push_back(s);
  }
  return goals;
}

int DiscreteMdp::num_goals() const {
  return static_cast<int>(std::count(goal_.begin(), goal_.end(), true));
}

DiscreteMdp DiscreteMdp::WithGamma(double gamma) const {
  return DiscreteMdp(num_states_, num_actions_, transition_, goal_, gamma,
                     rho0_);
}

bool DiscreteMdp::IsAbsorbing(StateId s) const {
  for (ActionId a = 0; a < num_actions_; ++a) {
    if (Transition(s, a, s) != 1.0) return false;
  }
  return true;
}

}  // namespace ddgc
