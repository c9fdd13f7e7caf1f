// Copyright 2026 The lazymask Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LAZYMASK_DECODE_STATE_HPP_
#define LAZYMASK_DECODE_STATE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "lazymask/constraints.hpp"
#include "lazymask/instance.hpp"
#include "lazymask/node_set.hpp"

namespace lazymask {

// Overestimate of the next-node potential set, plus how many nodes have been
// removed from it by backtracking since it was initialized.
struct CandidateSet {
  NodeSet members;
  int refinements = 0;

  bool Empty() const { return members.Empty(); }
  int Count() const { return members.Count(); }
  bool Contains(int node) const { return members.Contains(node); }
  void Refine(int node) {
    members.Erase(node);
    ++refinements;
  }
};

// Backtracking budget R; possibly unlimited.
class BacktrackBudget {
 public:
  static constexpr BacktrackBudget Unlimited() { return BacktrackBudget(); }
  constexpr explicit BacktrackBudget(std::int64_t limit) : unlimited_(false), limit_(limit) {}

  bool unlimited() const { return unlimited_; }
  std::int64_t limit() const { return limit_; }

  // Backtracking guard "r <= R": admits R + 1 pops in total.
  bool AllowsBacktrack(std::int64_t used) const { return unlimited_ || used <= limit_; }
  // Whether the global refinement feature reports the budget as reached.
  bool Reached(std::int64_t used) const { return !unlimited_ && used >= limit_; }

  bool operator==(const BacktrackBudget&) const = default;

 private:
  constexpr BacktrackBudget() = default;
  bool unlimited_ = true;
  std::int64_t limit_ = 0;
};

// One stack frame of the decoder: the candidate set for the next position
// and the propagated time or load at the current position.
struct Frame {
  CandidateSet candidates;
  double scalar = 0.0;
};

// Partial route under construction with one frame per position.
class DecodeState {
 public:
  DecodeState(const RoutingInstance& instance, BacktrackBudget budget);

  const RoutingInstance& instance() const { return *instance_; }
  std::span<const int> prefix() const { return prefix_; }
  int current() const { return prefix_.back(); }
  // Service-start time (TSPTW) or load (TSPDL) at the current node.
  double scalar() const { return frames_.back().scalar; }
  const NodeSet& visited() const { return visited_; }
  NodeSet Unvisited() const { return visited_.Complement(); }
  int remaining() const { return instance_->num_nodes() - static_cast<int>(prefix_.size()); }
  bool complete() const { return remaining() == 0; }

  std::span<const Frame> frames() const { return frames_; }
  CandidateSet& top() { return frames_.back().candidates; }
  const CandidateSet& top() const { return frames_.back().candidates; }

  std::int64_t backtracks() const { return backtracks_; }
  BacktrackBudget budget() const { return budget_; }
  bool relaxed() const { return relaxed_; }

  // Extends the route by `node`; the new frame starts with an empty
  // candidate set that the caller initializes.
  void Push(int node);
  // Removes the last node and refines the parent frame's candidate set.
  void Backtrack();
  void Relax();

 private:
  const RoutingInstance* instance_;
  std::vector<int> prefix_;
  NodeSet visited_;
  std::vector<Frame> frames_;
  std::int64_t backtracks_ = 0;
  BacktrackBudget budget_;
  bool relaxed_ = false;
};

// Refinement-intensity features: capped one-hot refinement count of the top
// frame and a two-way one-hot for the global budget status.
struct RieFeatures {
  std::vector<double> local;
  double global[2] = {1.0, 0.0};

  // 1-based position of the nonzero local entry.
  int local_index() const;
  bool budget_reached() const { return global[1] == 1.0; }
  std::vector<double> Concat() const;
};

inline constexpr int kDefaultRieCap = 7;

RieFeatures ComputeRieFeatures(const DecodeState& state, int cap = kDefaultRieCap);
RieFeatures MakeRieFeatures(int refinements, bool budget_reached, int cap);

// The parts of a decode state a policy's per-node features depend on.
struct StepContext {
  int current = 0;
  double scalar = 0.0;
  int unvisited = 0;
  RieFeatures rie;

  static StepContext From(const DecodeState& state, const RieFeatures& rie);
};

}  // namespace lazymask

#endif  // LAZYMASK_DECODE_STATE_HPP_
