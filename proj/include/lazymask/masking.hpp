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

#ifndef LAZYMASK_MASKING_HPP_
#define LAZYMASK_MASKING_HPP_

#include <span>
#include <string_view>

#include "lazymask/decode_state.hpp"
#include "lazymask/instance.hpp"
#include "lazymask/node_set.hpp"

namespace lazymask {

enum class InitStrategy { kSsl, kTsl };

std::string_view ToString(InitStrategy init);
InitStrategy ParseInitStrategy(std::string_view text);

// A node j is doomed at (current, scalar) when even direct travel to it
// breaks its limit: scalar + w(current, j) > l_j for TSPTW, or
// scalar + q_j > D_j for TSPDL. Both quantities only grow along any
// completion, so a doomed node stays doomed.
bool IsDoomed(const RoutingInstance& instance, int current, double scalar, int node);

// Single-step lookahead: empty if any unvisited node is doomed, otherwise
// every unvisited node.
NodeSet SslCandidates(const RoutingInstance& instance, int current, double scalar, const NodeSet& visited);

// Two-step lookahead: unvisited j such that j is reachable within its own
// limit and, after tentatively appending j, no other unvisited node is
// doomed.
NodeSet TslCandidates(const RoutingInstance& instance, int current, double scalar, const NodeSet& visited);

CandidateSet SslInit(const RoutingInstance& instance, const DecodeState& state);
CandidateSet TslInit(const RoutingInstance& instance, const DecodeState& state);
CandidateSet InitCandidates(InitStrategy init, const RoutingInstance& instance, const DecodeState& state);

inline constexpr int kMaxExactRemaining = 12;

// Exact potential set: next nodes from which some feasible completion of
// `prefix` exists. Depth-first search over completions, pruned by the
// doomed-node test. Throws TooLargeForExact when more than
// kMaxExactRemaining nodes remain unvisited.
CandidateSet ExactPotentialSet(const RoutingInstance& instance, std::span<const int> prefix);

}  // namespace lazymask

#endif  // LAZYMASK_MASKING_HPP_
