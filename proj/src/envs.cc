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

#include "ddgc/envs.h"

#include <algorithm>
#include <numeric>
#include <queue>

#include "ddgc/rng.h"

namespace ddgc {

DiscreteMdp MakeFigure1Mdp(double gamma) {
  const std::vector<std::vector<StateId>> next = {
      {1, 2},  // S00
      {3, 4},  // S01
      {2, 2},  // S02 dead end
      {3, 3},  // G_near
      {5, 6},  // S12
      {5, 5},  // G_left
      {6, 6},  // G_right
  };
  std::vector<bool> goal = {false, false, false, true, false, true, true};
  return DiscreteMdp::Deterministic(next, std::move(goal), gamma, 0);
}

std::vector<std::string> Figure1StateNames() {
  return {"S00", "S01", "S02", "G_near", "S12", "G_left", "G_right"};
}

DiscreteMdp MakeDiscountingConflictMdp(double gamma) {
  // 0 S0, 1 S1, 2 S2, 3 G1, 4 G2, 5 G3
  const std::vector<std::vector<StateId>> next = {
      {3, 1}, {4, 2}, {5, 5}, {3, 3}, {4, 4}, {5, 5},
  };
  std::vector<bool> goal = {false, false, false, true, true, true};
  return DiscreteMdp::Deterministic(next, std::move(goal), gamma, 0);
}

DiscreteMdp MakeDynamicsConflictMdp(double gamma) {
  // 0 start, 1 A, 2 B, 3 C, 4 N, 5 D
  const std::vector<std::vector<StateId>> next = {
      {1, 3}, {2, 2}, {1, 1}, {4, 4}, {5, 5}, {3, 3},
  };
  std::vector<bool> goal = {false, true, true, true, false, true};
  return DiscreteMdp::Deterministic(next, std::move(goal), gamma, 0);
}

std::vector<bool> ReachableStates(const DiscreteMdp& mdp) {
  std::vector<bool> seen(mdp.num_states(), false);
  std::queue<StateId> frontier;
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    if (mdp.rho0()[s] > 0.0) {
      seen[s] = true;
      frontier.push(s);
    }
  }
  while (!frontier.empty()) {
    const StateId s = frontier.front();
    frontier.pop();
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      const auto row = mdp.TransitionRow(s, a);
      for (StateId next = 0; next < mdp.num_states(); ++next) {
        if (row[next] > 0.0 && !seen[next]) {
          seen[next] = true;
          frontier.push(next);
        }
      }
    }
  }
  return seen;
}

DiscreteMdp MakeRandomMdp(const RandomMdpOptions& o) {
  CheckArgument(o.num_states >= 2, "random MDP needs at least two states");
  CheckArgument(o.num_actions >= 1, "random MDP needs actions");
  CheckArgument(o.num_goals >= 1 && o.num_goals < o.num_states,
                "num_goals must be in [1, num_states)");
  CheckArgument(o.branching >= 1 && o.branching <= o.num_states,
                "branching must be in [1, num_states]");
  const int n = o.num_states;
  const int k = o.num_actions;
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(DeriveSeed(o.seed, attempt));
    std::vector<StateId> candidates(n - 1);
    std::iota(candidates.begin(), candidates.end(), 1);
    std::vector<bool> goal(n, false);
    for (int g = 0; g < o.num_goals; ++g) {
      const auto pick = static_cast<std::size_t>(
          UniformDouble(rng) * static_cast<double>(candidates.size()));
      goal[candidates[pick]] = true;
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    std::vector<double> p(static_cast<std::size_t>(n) * k * n, 0.0);
    std::vector<StateId> states(n);
    for (StateId s = 0; s < n; ++s) {
      for (ActionId a = 0; a < k; ++a) {
        std::iota(states.begin(), states.end(), 0);
        // Partial Fisher-Yates for `branching` distinct successors.
        std::vector<int> weights(o.branching);
        int total = 0;
        for (int b = 0; b < o.branching; ++b) {
          const auto j = b + static_cast<int>(UniformDouble(rng) * (n - b));
          std::swap(states[b], states[j]);
          weights[b] = 1 + static_cast<int>(UniformDouble(rng) * 9.0);
          total += weights[b];
        }
        double* row = p.data() + (static_cast<std::size_t>(s) * k + a) * n;
        for (int b = 0; b < o.branching; ++b) {
          row[states[b]] = static_cast<double>(weights[b]) / total;
        }
      }
    }
    std::vector<double> rho0(n, 0.0);
    rho0[0] = 1.0;
    DiscreteMdp mdp(n, k, std::move(p), std::move(goal), o.gamma,
                    std::move(rho0));
    const auto reach = ReachableStates(mdp);
    if (std::all_of(reach.begin(), reach.end(), [](bool r) { return r; })) {
      return mdp;
    }
  }
}

}  // namespace ddgc
