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

#ifndef DDGC_POLICY_H_
#define DDGC_POLICY_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ddgc/common.h"
#include "ddgc/rng.h"

namespace ddgc {

// Stochastic action table pi(a|s), row-major over states.
class TabularPolicy {
 public:
  static constexpr double kRowTolerance = 1e-12;

  TabularPolicy(int num_states, int num_actions, std::vector<double> probs);

  static TabularPolicy Uniform(int num_states, int num_actions);
  static TabularPolicy Deterministic(int num_actions,
                                     std::span<const ActionId> actions);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double Prob(StateId s, ActionId a) const {
    return probs_[static_cast<std::size_t>(s) * num_actions_ + a];
  }
  std::span<const double> Row(StateId s) const {
    return {probs_.data() + static_cast<std::size_t>(s) * num_actions_,
            static_cast<std::size_t>(num_actions_)};
  }
  const std::vector<double>& probs() const { return probs_; }

  ActionId Sample(StateId s, Rng& rng) const;

  bool IsDeterministic() const;
  // Argmax action per state (lowest id on ties).
  std::vector<ActionId> ModalActions() const;

  friend bool operator==(const TabularPolicy&, const TabularPolicy&) = default;

 private:
  int num_states_;
  int num_actions_;
  std::vector<double> probs_;
};

// Finite probability distribution over policies. Following a mixture means
// drawing one component per episode and following it for the whole episode.
template <typename Policy>
class Mixture {
 public:
  static constexpr double kWeightTolerance = 1e-10;

  struct Component {
    Policy policy;
    double weight;
  };

  explicit Mixture(Policy policy) {
    components_.push_back({std::move(policy), 1.0});
  }

  explicit Mixture(std::vector<Component> components)
      : components_(std::move(components)) {
    CheckArgument(!components_.empty(), "mixture must be non-empty");
    double total = 0.0;
    for (const auto& c : components_) {
      CheckArgument(c.weight >= 0.0 && std::isfinite(c.weight),
                    "mixture weights must be non-negative");
      total += c.weight;
    }
    CheckArgument(std::abs(total - 1.0) <= kWeightTolerance,
                  "mixture weights must sum to 1");
  }

  const std::vector<Component>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const Policy& policy(std::size_t i) const { return components_[i].policy; }
  double weight(std::size_t i) const { return components_[i].weight; }

  std::vector<double> weights() const {
    std::vector<double> w;
    w.reserve(components_.size());
    for (const auto& c : components_) w.push_back(c.weight);
    return w;
  }

  std::size_t SampleComponent(Rng& rng) const {
    if (components_.size() == 1) return 0;
    const auto w = weights();
    return static_cast<std::size_t>(SampleIndex(w, rng));
  }

 private:
  std::vector<Component> components_;
};

using PolicyMixture = Mixture<TabularPolicy>;

// lambda_k = 2 / (k + 1).
inline double FrankWolfeStepSize(int k) { return 2.0 / (k + 1.0); }

// (1 - lambda_k) * old + lambda_k * point_mass(new_policy). At k = 1 the step
// is 1 and the old components are dropped rather than kept at weight zero.
template <typename Policy>
Mixture<Policy> MixtureUpdate(const Mixture<Policy>& old, Policy new_policy,
                              int k) {
  CheckArgument(k >= 1, "mixture update index k must be >= 1");
  const double lambda = FrankWolfeStepSize(k);
  if (k == 1) return Mixture<Policy>(std::move(new_policy));
  std::vector<typename Mixture<Policy>::Component> next;
  next.reserve(old.size() + 1);
  for (const auto& c : old.components()) {
    next.push_back({c.policy, (1.0 - lambda) * c.weight});
  }
  next.push_back({std::move(new_policy), lambda});
  return Mixture<Policy>(std::move(next));
}

// alpha * first + (1 - alpha) * second, as a mixture over the union of their
// components. Zero-weight components are dropped.
template <typename Policy>
Mixture<Policy> Blend(const Mixture<Policy>& first,
                      const Mixture<Policy>& second, double alpha) {
  CheckArgument(alpha >= 0.0 && alpha <= 1.0, "blend weight must be in [0, 1]");
  std::vector<typename Mixture<Policy>::Component> out;
  out.reserve(first.size() + second.size());
  for (const auto& c : first.components()) {
    if (alpha * c.weight > 0.0) out.push_back({c.policy, alpha * c.weight});
  }
  for (const auto& c : second.components()) {
    if ((1.0 - alpha) * c.weight > 0.0) {
      out.push_back({c.policy, (1.0 - alpha) * c.weight});
    }
  }
  return Mixture<Policy>(std::move(out));
}

}  // namespace ddgc

#endif  // DDGC_POLICY_H_
