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

#include "ddgc/q_table.h"

#include <cmath>

namespace ddgc {

double QTable::MaxAbsDiff(const QTable& other) const {
  CheckArgument(other.num_states_ == num_states_ &&
                    other.num_actions_ == num_actions_,
                "Q tables differ in shape");
  double gap = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    gap = std::max(gap, std::abs(values_[i] - other.values_[i]));
  }
  return gap;
}

TabularPolicy GreedyPolicy(const QTable& q) {
  std::vector<ActionId> actions(q.num_states());
  for (StateId s = 0; s < q.num_states(); ++s) {
    const auto row = q.Row(s);
    // max_element returns the first maximum.
    actions[s] = static_cast<ActionId>(
        std::max_element(row.begin(), row.end()) - row.begin());
  }
  return TabularPolicy::Deterministic(q.num_actions(), actions);
}

}  // namespace ddgc
