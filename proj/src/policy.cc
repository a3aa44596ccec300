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

#include "ddgc/policy.h"

#include <algorithm>
#include <string>

namespace ddgc {

TabularPolicy::TabularPolicy(int num_states, int num_actions,
                             std::vector<double> probs)
    : num_states_(num_states),
      num_actions_(num_actions),
      probs_(std::move(probs)) {
  CheckArgument(num_states_ > 0 && num_actions_ > 0,
                "policy dimensions must be positive");
  CheckArgument(probs_.size() ==
                    static_cast<std::size_t>(num_states_) * num_actions_,
                "policy table has wrong size");
  for (StateId s = 0; s < num_states_; ++s) {
    double total = 0.0;
    for (double p : Row(s)) {
      CheckArgument(std::isfinite(p) && p >= 0.0,
                    "policy probabilities must be non-negative");
      total += p;
    }
    CheckArgument(std::abs(total - 1.0) <= kRowTolerance,
                  "policy row " + std::to_string(s) + " does not sum to 1");
  }
}

TabularPolicy TabularPolicy::Uniform(int num_states, int num_actions) {
  CheckArgument(num_states > 0 && num_actions > 0,
                "policy dimensions must be positive");
  return TabularPolicy(
      num_states, num_actions,
      std::vector<double>(static_cast<std::size_t>(num_states) * num_actions,
                          1.0 / num_actions));
}

TabularPolicy TabularPolicy::Deterministic(int num_actions,
                                           std::span<const ActionId> actions) {
  const int num_states = static_cast<int>(actions.size());
  CheckArgument(num_states > 0, "deterministic policy needs states");
  std::vector<double> probs(static_cast<std::size_t>(num_states) *
                            num_actions);
  for (StateId s = 0; s < num_states; ++s) {
    CheckArgument(actions[s] >= 0 && actions[s] < num_actions,
                  "action out of range");
    probs[static_cast<std::size_t>(s) * num_actions + actions[s]] = 1.0;
  }
  return TabularPolicy(num_states, num_actions, std::move(probs));
}

ActionId TabularPolicy::Sample(StateId s, Rng& rng) const {
  return SampleIndex(Row(s), rng);
}

bool TabularPolicy::IsDeterministic() const {
  return std::all_of(probs_.begin(), probs_.end(),
                     [](double p) { return p == 0.0 || p == 1.0; });
}

std::vector<ActionId> TabularPolicy::ModalActions() const {
  std::vector<ActionId> actions(num_states_);
  for (StateId s = 0; s < num_states_; ++s) {
    const auto row = Row(s);
    actions[s] = static_cast<ActionId>(
        std::max_element(row.begin(), row.end()) - row.begin());
  }
  return actions;
}

}  // namespace ddgc
