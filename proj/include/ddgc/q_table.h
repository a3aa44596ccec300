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

#ifndef DDGC_Q_TABLE_H_
#define DDGC_Q_TABLE_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "ddgc/common.h"
#include "ddgc/policy.h"

namespace ddgc {

// Action values Q[s][a], kept inside [0, V_max] with V_max = 1 / (1 - gamma).
class QTable {
 public:
  QTable(int num_states, int num_actions, double gamma)
      : num_states_(num_states),
        num_actions_(num_actions),
        v_max_(1.0 / (1.0 - gamma)),
        values_(static_cast<std::size_t>(num_states) * num_actions, 0.0) {
    CheckArgument(num_states > 0 && num_actions > 0,
                  "Q table dimensions must be positive");
    CheckArgument(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
  }

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double v_max() const { return v_max_; }

  double operator()(StateId s, ActionId a) const {
    return values_[Index(s, a)];
  }
  // Stores the value clipped to [0, V_max].
  void Set(StateId s, ActionId a, double value) {
    values_[Index(s, a)] = std::clamp(value, 0.0, v_max_);
  }
  std::span<const double> Row(StateId s) const {
    return {values_.data() + Index(s, 0),
            static_cast<std::size_t>(num_actions_)};
  }
  double MaxValue(StateId s) const {
    const auto row = Row(s);
    return *std::max_element(row.begin(), row.end());
  }
  const std::vector<double>& values() const { return values_; }

  // Max-norm distance; tables must share a shape.
  double MaxAbsDiff(const QTable& other) const;

 private:
  std::size_t Index(StateId s, ActionId a) const {
    return static_cast<std::size_t>(s) * num_actions_ + a;
  }

  int num_states_;
  int num_actions_;
  double v_max_;
  std::vector<double> values_;
};

// Deterministic argmax policy; ties go to the lowest action id.
TabularPolicy GreedyPolicy(const QTable& q);

}  // namespace ddgc

#endif  // DDGC_Q_TABLE_H_
