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

#ifndef DDGC_MDP_H_
#define DDGC_MDP_H_

#include <cstddef>
#include <span>
#include <vector>

#include "ddgc/common.h"

namespace ddgc {

// Finite MDP with a state-only goal reward R(s) = 1{s is a goal}.
//
// The transition tensor is stored densely as P[(s * |A| + a) * |S| + s'].
// All invariants (row-stochastic kernel, normalized start distribution,
// 0 <= gamma < 1) are checked on construction; the object is immutable.
class DiscreteMdp {
 public:
  static constexpr double kRowTolerance = 1e-12;

  DiscreteMdp(int num_states, int num_actions, std::vector<double> transition,
              std::vector<bool> goal, double gamma, std::vector<double> rho0);

  // Deterministic dynamics: next[s][a] is the successor of (s, a).
  static DiscreteMdp Deterministic(
      const std::vector<std::vector<StateId>>& next, std::vector<bool> goal,
      double gamma, StateId start);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double gamma() const { return gamma_; }

  double Transition(StateId s, ActionId a, StateId next) const {
    return transition_[Offset(s, a) + next];
  }
  std::span<const double> TransitionRow(StateId s, ActionId a) const {
    return {transition_.data() + Offset(s, a),
            static_cast<std::size_t>(num_states_)};
  }
  const std::vector<double>& transition_tensor() const { return transition_; }

  bool IsGoal(StateId s) const { return goal_[s]; }
  double Reward(StateId s) const { return goal_[s] ? 1.0 : 0.0; }
  const std::vector<bool>& goal_mask() const { return goal_; }
  std::vector<StateId> GoalStates() const;
  int num_goals() const;

  const std::vector<double>& rho0() const { return rho0_; }

  // Same dynamics and goals under a different discount.
  DiscreteMdp WithGamma(double gamma) const;

  // True if (s, a) leads back to s with probability one for every action.
  bool IsAbsorbing(StateId s) const;

  bool ValidState(StateId s) const { return s >= 0 && s < num_states_; }
  bool ValidAction(ActionId a) const { return a >= 0 && a < num_actions_; }

 private:
  std::size_t Offset(StateId s, ActionId a) const {
    return (static_cast<std::size_t>(s) * num_actions_ + a) * num_states_;
  }

  int num_states_;
  int num_actions_;
  std::vector<double> transition_;
  std::vector<bool> goal_;
  double gamma_;
  std::vector<double> rho0_;
};

}  // namespace ddgc

#endif  // DDGC_MDP_H_
