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

#include "lazymask/masking.hpp"

#include <string>

#include "lazymask/constraints.hpp"
#include "lazymask/errors.hpp"

namespace lazymask {

std::string_view ToString(InitStrategy init) { return init == InitStrategy::kSsl ? "ssl" : "tsl"; }

InitStrategy ParseInitStrategy(std::string_view text) {
  if (text == "ssl") return InitStrategy::kSsl;
  if (text == "tsl") return InitStrategy::kTsl;
  throw DataError("unknown init strategy '" + std::string(text) + "'");
}

bool IsDoomed(const RoutingInstance& instance, int current, double scalar, int node) {
  // Same arithmetic as Propagate so that the last-position test is exact.
  return !WithinLimit(instance, node, Advance(instance, current, scalar, node));
}

namespace {

bool AnyDoomed(const RoutingInstance& instance, int current, double scalar, const NodeSet& visited, int skip) {
  const int nodes = instance.num_nodes();
  for (int j = 0; j < nodes; ++j) {
    if (j == skip || visited.Contains(j)) continue;
    if (IsDoomed(instance, current, scalar, j)) return true;
  }
  return false;
}

}  // namespace

NodeSet SslCandidates(const RoutingInstance& instance, int current, double scalar, const NodeSet& visited) {
  if (AnyDoomed(instance, current, scalar, visited, -1)) return NodeSet(instance.num_nodes());
  return visited.Complement();
}

NodeSet TslCandidates(const RoutingInstance& instance, int current, double scalar, const NodeSet& visited) {
  NodeSet out(instance.num_nodes());
  const int nodes = instance.num_nodes();
  for (int j = 0; j < nodes; ++j) {
    if (visited.Contains(j)) continue;
    const double next = Advance(instance, current, scalar, j);
    if (!WithinLimit(instance, j, next)) continue;
    if (AnyDoomed(instance, j, next, visited, j)) continue;
    out.Insert(j);
  }
  return out;
}

CandidateSet SslInit(const RoutingInstance& instance, const DecodeState& state) {
  return {SslCandidates(instance, state.current(), state.scalar(), state.visited()), 0};
}

CandidateSet TslInit(const RoutingInstance& instance, const DecodeState& state) {
  return {TslCandidates(instance, state.current(), state.scalar(), state.visited()), 0};
}

CandidateSet InitCandidates(InitStrategy init, const RoutingInstance& instance, const DecodeState& state) {
  return init == InitStrategy::kSsl ? SslInit(instance, state) : TslInit(instance, state);
}

namespace {

// True iff the route can be completed feasibly from (current, scalar) given
// that the current node itself is within its limit.
bool Completable(const RoutingInstance& instance, int current, double scalar, NodeSet& visited, int remaining) {
  if (remaining == 0) return true;
  if (AnyDoomed(instance, current, scalar, visited, -1)) return false;
  const int nodes = instance.num_nodes();
  for (int j = 0; j < nodes; ++j) {
    if (visited.Contains(j)) continue;
    visited.Insert(j);
    const bool ok = Completable(instance, j, Advance(instance, current, scalar, j), visited, remaining - 1);
    visited.Erase(j);
    if (ok) return true;
  }
  return false;
}

}  // namespace

CandidateSet ExactPotentialSet(const RoutingInstance& instance, std::span<const int> prefix) {
  const PropagationTrace trace = Propagate(instance, prefix);
  const int remaining = instance.num_nodes() - static_cast<int>(prefix.size());
  if (remaining > kMaxExactRemaining) {
    throw TooLargeForExact("exact potential set needs at most " + std::to_string(kMaxExactRemaining) +
                           " remaining nodes, got " + std::to_string(remaining));
  }
  CandidateSet out{NodeSet(instance.num_nodes()), 0};
  for (double v : trace.violations) {
    if (v > kFeasibilityTolerance) return out;
  }
  NodeSet visited(instance.num_nodes());
  for (int node : prefix) visited.Insert(node);
  const int current = prefix.back();
  const double scalar = trace.values.back();
  const int nodes = instance.num_nodes();
  for (int j = 0; j < nodes; ++j) {
    if (visited.Contains(j)) continue;
    const double next = Advance(instance, current, scalar, j);
    if (!WithinLimit(instance, j, next)) continue;
    visited.Insert(j);
    if (Completable(instance, j, next, visited, remaining - 1)) out.members.Insert(j);
    visited.Erase(j);
  }
  return out;
}

}  // namespace lazymask
