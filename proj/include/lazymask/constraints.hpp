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

#ifndef LAZYMASK_CONSTRAINTS_HPP_
#define LAZYMASK_CONSTRAINTS_HPP_

#include <span>
#include <vector>

#include "lazymask/instance.hpp"

namespace lazymask {

// Depot-rooted sequence of node indices. A complete route visits every node
// exactly once.
using Route = std::vector<int>;

// Absolute tolerance on time and load comparisons.
inline constexpr double kFeasibilityTolerance = 1e-9;

// Per-position service-start times (TSPTW) or cumulative loads (TSPDL) and
// the amount by which each exceeds the node's due time or draft limit.
struct PropagationTrace {
  std::vector<double> values;
  std::vector<double> violations;
};

// Service-start time or load at `to` when reached from `from` carrying
// `scalar`. For TSPTW waiting until the ready time is allowed.
inline double Advance(const RoutingInstance& instance, int from, double scalar, int to) {
  if (instance.kind() == ProblemKind::kTsptw) {
    const double arrival = scalar + instance.duration(from, to);
    const double ready = instance.windows()[to].ready;
    return arrival < ready ? ready : arrival;
  }
  return scalar + instance.demands()[to];
}

// Amount by which `scalar` at `node` exceeds its limit; 0 when within it.
inline double ViolationAt(const RoutingInstance& instance, int node, double scalar) {
  const double limit = instance.kind() == ProblemKind::kTsptw ? instance.windows()[node].due
                                                              : instance.draft_limits()[node];
  const double excess = scalar - limit;
  return excess > 0.0 ? excess : 0.0;
}

inline bool WithinLimit(const RoutingInstance& instance, int node, double scalar) {
  return ViolationAt(instance, node, scalar) <= kFeasibilityTolerance;
}

// Throws PrefixNotDepotRooted or RepeatedNode.
PropagationTrace Propagate(const RoutingInstance& instance, std::span<const int> prefix);

// Closed-tour Euclidean length including the return leg. Throws
// IncompleteRoute.
double Objective(const RoutingInstance& instance, std::span<const int> route);

struct Violation {
  int position = 0;
  int node = 0;
  double amount = 0.0;
};

struct FeasibilityVerdict {
  bool feasible = true;
  std::vector<Violation> violations;
  explicit operator bool() const { return feasible; }
};

FeasibilityVerdict CheckFeasible(const RoutingInstance& instance, std::span<const int> route);

// Sum of per-position violations of a complete route.
double TotalViolation(const RoutingInstance& instance, std::span<const int> route);

// l1-penalized cost: objective + rho * total violation, and exactly the
// objective when the route is feasible.
double Penalty(const RoutingInstance& instance, std::span<const int> route, double rho);

// Route visiting the ports in ascending draft-limit order (ties by index).
Route AscendingDraftRoute(const RoutingInstance& instance);

// True iff the ascending-draft-limit route is feasible, which for TSPDL is
// equivalent to the instance admitting any feasible route. Throws
// WrongProblemKind for TSPTW instances.
bool TspdlInstanceFeasible(const RoutingInstance& instance);

// Throws IncompleteRoute / RepeatedNode / PrefixNotDepotRooted.
void ValidateCompleteRoute(const RoutingInstance& instance, std::span<const int> route);

}  // namespace lazymask

#endif  // LAZYMASK_CONSTRAINTS_HPP_
