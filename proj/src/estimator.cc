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

#include "ddgc/estimator.h"

#include <algorithm>

namespace ddgc {

double VisitationNormalizer(double gamma, int horizon, int num_trajectories) {
  CheckArgument(horizon >= 1 && num_trajectories >= 1,
                "estimator needs H >= 1 and N_T >= 1");
  CheckArgument(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
  return (1.0 - gamma) /
         (num_trajectories * (1.0 - std::pow(gamma, horizon)));
}

VisitationEstimate EstimateD(const TrajectoryBatch& batch, int num_states,
                             double gamma, EstimatorConvention convention) {
  CheckArgument(!batch.empty(), "cannot estimate visitation of an empty batch");
  VisitationEstimate est;
  est.d_hat.assign(num_states, 0.0);
  est.horizon = batch.horizon;
  est.num_trajectories = batch.num_trajectories();
  est.gamma = gamma;
  const double z =
      VisitationNormalizer(gamma, batch.horizon, batch.num_trajectories());
  // Episodes are folded in order, so the floating-point sum is deterministic.
  batch.ForEachStep([&](const Transition& step) {
    const StateId s =
        convention == EstimatorConvention::kNextState ? step.s_next : step.s;
    CheckArgument(s >= 0 && s < num_states, "state id out of range");
    est.d_hat[s] += z * std::pow(gamma, step.t - 1);
  });
  return est;
}

std::vector<double> CustomReward(std::span<const double> d_hat,
                                 const std::vector<bool>& goal_mask) {
  CheckArgument(d_hat.size() == goal_mask.size(),
                "estimate and goal mask differ in size");
  std::vector<double> r(d_hat.size(), 0.0);
  for (std::size_t s = 0; s < r.size(); ++s) {
    if (goal_mask[s]) r[s] = std::clamp(1.0 - d_hat[s], 0.0, 1.0);
  }
  return r;
}

GridDiscretizer::GridDiscretizer(int precision, int dims)
    : precision_(precision), dims_(dims) {
  CheckArgument(precision >= 1, "discretization precision must be >= 1");
  CheckArgument(dims >= 1, "discretizer needs at least one dimension");
}

std::int64_t GridDiscretizer::num_cells() const {
  std::int64_t n = 1;
  for (int i = 0; i < dims_; ++i) n *= precision_;
  return n;
}

std::int64_t GridDiscretizer::Cell(std::span<const double> point) const {
  CheckArgument(static_cast<int>(point.size()) == dims_,
                "point dimension does not match the discretizer");
  std::int64_t id = 0;
  for (double x : point) {
    const auto idx = static_cast<std::int64_t>(
        std::clamp(std::floor(x * precision_), 0.0, precision_ - 1.0));
    id = id * precision_ + idx;
  }
  return id;
}

std::vector<double> GridDiscretizer::CellCenter(std::int64_t cell) const {
  std::vector<double> center(dims_);
  for (int i = dims_ - 1; i >= 0; --i) {
    center[i] = (static_cast<double>(cell % precision_) + 0.5) / precision_;
    cell /= precision_;
  }
  return center;
}

}  // namespace ddgc
