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

#ifndef DDGC_ENVS_H_
#define DDGC_ENVS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ddgc/mdp.h"

namespace ddgc {

// Seven-state continuing deterministic MDP with three goal sinks, two actions.
//
//   0 S00 (start) --a0--> 1 S01      --a1--> 2 S02 (dead end, sink)
//   1 S01         --a0--> 3 G_near   --a1--> 4 S12
//   4 S12         --a0--> 5 G_left   --a1--> 6 G_right
//
// S01 is the branching state: one action reaches a single nearby goal, the
// other enters the S12 subtree where both actions reach a goal. Goals and the
// dead end are absorbing under every action.
DiscreteMdp MakeFigure1Mdp(double gamma = 0.95);
inline constexpr int kFigure1NumStates = 7;
std::vector<std::string> Figure1StateNames();

// Chain where goal k sits k steps from the start:
//   S0 -a0-> G1, S0 -a1-> S1 -a0-> G2, S1 -a1-> S2 -*-> G3.
// Discounting favours the nearest goal even though spreading mass is better
// for the diversity objective.
DiscreteMdp MakeDiscountingConflictMdp(double gamma = 0.9);

// Start chooses between two disjoint loops:
//   small loop A -> B -> A (both goals, length 2),
//   large loop C -> N -> D -> C (two goals and the non-goal N, length 3).
// The small loop maximizes return; mixing in the large loop raises F.
DiscreteMdp MakeDynamicsConflictMdp(double gamma = 0.999);

struct RandomMdpOptions {
  int num_states = 10;
  int num_actions = 2;
  int num_goals = 3;
  int branching = 2;  // successors per (s, a)
  double gamma = 0.9;
  std::uint64_t seed = 0;
};

// Random MDP with start state 0, goals drawn from the remaining states and
// each (s, a) row supported on `branching` distinct successors with integer
// weights in [1, 9]. Resampled until every state is reachable from the start.
DiscreteMdp MakeRandomMdp(const RandomMdpOptions& options);

// States reachable from the support of rho0 under some action sequence.
std::vector<bool> ReachableStates(const DiscreteMdp& mdp);

}  // namespace ddgc

#endif  // DDGC_ENVS_H_
