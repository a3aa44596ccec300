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

#ifndef DDGC_ESTIMATOR_H_
#define DDGC_ESTIMATOR_H_

#include <cmath>
#include <concepts>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "ddgc/common.h"
#include "ddgc/sampling.h"

namespace ddgc {

// Which state of a transition (s, a, r, s', t) is counted, with weight
// gamma^(t-1). kNextState counts s' (start state excluded); kVisitedState
// counts s, i.e. s_0 .. s_{H-1}. Both use the normalizer
// (1 - gamma) / (N_T (1 - gamma^H)), so each estimate sums to 1.
enum class EstimatorConvention { kNextState, kVisitedState };

struct VisitationEstimate {
  std::vector<double> d_hat;
  int horizon = 0;
  int num_trajectories = 0;
  double gamma = 0.0;
};

// (1 - gamma) / (N_T (1 - gamma^H)); for gamma = 0 this is 1 / N_T.
double VisitationNormalizer(double gamma, int horizon, int num_trajectories);

VisitationEstimate EstimateD(
    const TrajectoryBatch& batch, int num_states, double gamma,
    EstimatorConvention convention = EstimatorConvention::kNextState);

// r(s) = 1 - d_hat(s) on goal states and 0 elsewhere.
std::vector<double> CustomReward(std::span<const double> d_hat,
                                 const std::vector<bool>& goal_mask);

// Same transitions with r replaced by reward_fn(s').
template <typename Step, typename RewardFn>
  requires std::invocable<RewardFn&, const decltype(Step::s_next)&>
Batch<Step> Relabel(const Batch<Step>& batch, RewardFn&& reward_fn) {
  Batch<Step> out = batch;
  for (auto& episode : out.episodes) {
    for (auto& step : episode.steps) step.r = reward_fn(step.s_next);
  }
  return out;
}

inline TrajectoryBatch Relabel(const TrajectoryBatch& batch,
                               std::span<const double> reward_table) {
  return Relabel(batch, [reward_table](StateId s) {
    return reward_table[static_cast<std::size_t>(s)];
  });
}

// Concatenation of the episodes of several batches (horizon of the first).
template <typename Step>
Batch<Step> MergeBatches(std::initializer_list<const Batch<Step>*> parts) {
  Batch<Step> out;
  for (const Batch<Step>* part : parts) {
    if (part == nullptr) continue;
    if (out.horizon == 0) {
      out.horizon = part->horizon;
      out.seed = part->seed;
    }
    out.episodes.insert(out.episodes.end(), part->episodes.begin(),
                        part->episodes.end());
  }
  return out;
}

// Persistent store of goal-reaching episodes. Episodes are identified by
// (batch seed, index); re-adding a stored episode is a no-op. A capacity of
// zero means unlimited, otherwise the oldest episodes are evicted first.
template <typename Step>
class GoalBuffer {
 public:
  explicit GoalBuffer(std::size_t capacity = 0) : capacity_(capacity) {}

  // Adds every episode whose recorded (extrinsic) return is positive.
  // Returns the number of episodes added.
  int Update(const Batch<Step>& batch) {
    int added = 0;
    for (const auto& episode : batch.episodes) {
      if (!(episode.Return() > 0.0)) continue;
      const Key key{episode.batch_seed, episode.index};
      if (!ids_.insert(key).second) continue;
      episodes_.push_back(episode);
      ++insertions_;
      ++added;
      if (capacity_ > 0 && episodes_.size() > capacity_) {
        const auto& oldest = episodes_.front();
        ids_.erase(Key{oldest.batch_seed, oldest.index});
        episodes_.pop_front();
      }
    }
    return added;
  }

  const std::deque<Episode<Step>>& episodes() const { return episodes_; }
  std::size_t size() const { return episodes_.size(); }
  bool empty() const { return episodes_.empty(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t insertions() const { return insertions_; }
  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (const auto& e : episodes_) n += e.steps.size();
    return n;
  }

  Batch<Step> AsBatch(int horizon) const {
    Batch<Step> out;
    out.horizon = horizon;
    out.episodes.assign(episodes_.begin(), episodes_.end());
    return out;
  }

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  std::size_t capacity_;
  std::deque<Episode<Step>> episodes_;
  std::set<Key> ids_;
  std::uint64_t insertions_ = 0;
};

// Uniform grid over the unit box: cell index floor(x * precision) per
// coordinate, clamped to [0, precision - 1]; the flat id is row-major with the
// first coordinate most significant.
class GridDiscretizer {
 public:
  GridDiscretizer(int precision, int dims);

  int precision() const { return precision_; }
  int dims() const { return dims_; }
  std::int64_t num_cells() const;

  std::int64_t Cell(std::span<const double> point) const;
  std::vector<double> CellCenter(std::int64_t cell) const;

 private:
  int precision_;
  int dims_;
};

// Visitation estimate over discretized cells, keyed by cell id.
struct CellVisitationEstimate {
  std::map<std::int64_t, double> d_hat;
  int horizon = 0;
  int num_trajectories = 0;
  double gamma = 0.0;

  double At(std::int64_t cell) const {
    auto it = d_hat.find(cell);
    return it == d_hat.end() ? 0.0 : it->second;
  }
};

// Next-state cell estimator: the discrete formula with 1(s' = s) replaced by
// 1(cell(s') = cell). `cell_of` maps a Step::s_next to a cell id.
template <typename Step, typename CellFn>
CellVisitationEstimate EstimateCellD(const Batch<Step>& batch, double gamma,
                                     CellFn&& cell_of) {
  CheckArgument(!batch.empty(), "cannot estimate visitation of an empty batch");
  CellVisitationEstimate est;
  est.horizon = batch.horizon;
  est.num_trajectories = batch.num_trajectories();
  est.gamma = gamma;
  const double z =
      VisitationNormalizer(gamma, batch.horizon, batch.num_trajectories());
  batch.ForEachStep([&](const Step& step) {
    est.d_hat[cell_of(step.s_next)] += z * std::pow(gamma, step.t - 1);
  });
  return est;
}

}  // namespace ddgc

#endif  // DDGC_ESTIMATOR_H_
