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

#include "lazymask/constraints.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lazymask/errors.hpp"
#include "lazymask/node_set.hpp"

namespace lazymask {

namespace {

void ValidatePrefix(const RoutingInstance& instance, std::span<const int> prefix) {
  if (prefix.empty() || prefix[0] != 0) throw PrefixNotDepotRooted();
  NodeSet seen(instance.num_nodes());
  for (int node : prefix) {
    if (node < 0 || node >= instance.num_nodes()) {
      throw Error("node index " + std::to_string(node) + " out of range");
    }
    if (seen.Contains(node)) throw RepeatedNode(node);
    seen.Insert(node);
  }
}

}  // namespace

void ValidateCompleteRoute(const RoutingInstance& instance, std::span<const int> route) {
  if (static_cast<int>(route.size()) != instance.horizon()) {
    throw IncompleteRoute("route has " + std::to_string(route.size()) + " nodes, expected " +
                          std::to_string(instance.horizon()));
  }
  ValidatePrefix(instance, route);
}

PropagationTrace Propagate(const RoutingInstance& instance, std::span<const int> prefix) {
  ValidatePrefix(instance, prefix);
  PropagationTrace trace;
  trace.values.reserve(prefix.size());
  trace.violations.reserve(prefix.size());
  // tau_1 = 0 at the depot; delta_1 = q_0 = 0.
  double scalar = 0.0;
  trace.values.push_back(scalar);
  trace.violations.push_back(ViolationAt(instance, prefix[0], scalar));
  for (std::size_t t = 1; t < prefix.size(); ++t) {
    scalar = Advance(instance, prefix[t - 1], scalar, prefix[t]);
    trace.values.push_back(scalar);
    trace.violations.push_back(ViolationAt(instance, prefix[t], scalar));
  }
  return trace;
}

double Objective(const RoutingInstance& instance, std::span<const int> route) {
  ValidateCompleteRoute(instance, route);
  double length = 0.0;
  for (std::size_t t = 1; t < route.size(); ++t) length += instance.distance(route[t - 1], route[t]);
  return length + instance.distance(route.back(), route.front());
}

FeasibilityVerdict CheckFeasible(const RoutingInstance& instance, std::span<const int> route) {
  ValidateCompleteRoute(instance, route);
  const PropagationTrace trace = Propagate(instance, route);
  FeasibilityVerdict verdict;
  for (std::size_t t = 0; t < route.size(); ++t) {
    if (trace.violations[t] > kFeasibilityTolerance) {
      verdict.feasible = false;
      verdict.violations.push_back({static_cast<int>(t), route[t], trace.violations[t]});
    }
  }
  return verdict;
}

double TotalViolation(const RoutingInstance& instance, std::span<const int> route) {
  ValidateCompleteRoute(instance, route);
  const PropagationTrace trace = Propagate(instance, route);
  return std::accumulate(trace.violations.begin(), trace.violations.end(), 0.0);
}

double Penalty(const RoutingInstance& instance, std::span<const int> route, double rho) {
  const double length = Objective(instance, route);
  const PropagationTrace trace = Propagate(instance, route);
  bool feasible = true;
  for (double v : trace.violations) feasible = feasible && v <= kFeasibilityTolerance;
  // Sub-tolerance excesses count as feasible and are not charged.
  if (feasible) return length;
  return length + rho * std::accumulate(trace.violations.begin(), trace.violations.end(), 0.0);
}

Route AscendingDraftRoute(const RoutingInstance& instance) {
  if (instance.kind() != ProblemKind::kTspdl) throw WrongProblemKind("draft-limit ordering needs a TSPDL instance");
  Route route(instance.num_nodes());
  std::iota(route.begin(), route.end(), 0);
  const auto drafts = instance.draft_limits();
  std::stable_sort(route.begin() + 1, route.end(), [&](int a, int b) { return drafts[a] < drafts[b]; });
  return route;
}

bool TspdlInstanceFeasible(const RoutingInstance& instance) {
  return CheckFeasible(instance, AscendingDraftRoute(instance)).feasible;
}

}  // namespace lazymask
