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

#include "lazymask/decode_state.hpp"

#include <algorithm>

#include "lazymask/errors.hpp"

namespace lazymask {

DecodeState::DecodeState(const RoutingInstance& instance, BacktrackBudget budget)
    : instance_(&instance), visited_(instance.num_nodes()), budget_(budget) {
  prefix_.reserve(instance.num_nodes());
  frames_.reserve(instance.num_nodes());
  prefix_.push_back(0);
  visited_.Insert(0);
  frames_.push_back({CandidateSet{NodeSet(instance.num_nodes()), 0}, 0.0});
}

void DecodeState::Push(int node) {
  const double next = Advance(*instance_, current(), scalar(), node);
  prefix_.push_back(node);
  visited_.Insert(node);
  frames_.push_back({CandidateSet{NodeSet(instance_->num_nodes()), 0}, next});
}

void DecodeState::Backtrack() {
  if (prefix_.size() < 2) throw Error("cannot backtrack past the depot");
  const int node = prefix_.back();
  prefix_.pop_back();
  frames_.pop_back();
  visited_.Erase(node);
  frames_.back().candidates.Refine(node);
  ++backtracks_;
}

void DecodeState::Relax() {
  frames_.back().candidates.members = Unvisited();
  relaxed_ = true;
}

int RieFeatures::local_index() const {
  const auto it = std::find(local.begin(), local.end(), 1.0);
  return static_cast<int>(it - local.begin()) + 1;
}

std::vector<double> RieFeatures::Concat() const {
  std::vector<double> out(local);
  out.push_back(global[0]);
  out.push_back(global[1]);
  return out;
}

RieFeatures MakeRieFeatures(int refinements, bool budget_reached, int cap) {
  if (cap < 1) throw Error("refinement feature cap must be >= 1");
  RieFeatures rie;
  rie.local.assign(cap, 0.0);
  rie.local[std::min(refinements + 1, cap) - 1] = 1.0;
  rie.global[0] = budget_reached ? 0.0 : 1.0;
  rie.global[1] = budget_reached ? 1.0 : 0.0;
  return rie;
}

RieFeatures ComputeRieFeatures(const DecodeState& state, int cap) {
  return MakeRieFeatures(state.top().refinements, state.budget().Reached(state.backtracks()), cap);
}

StepContext StepContext::From(const DecodeState& state, const RieFeatures& rie) {
  return {state.current(), state.scalar(), state.remaining(), rie};
}

}  // namespace lazymask
