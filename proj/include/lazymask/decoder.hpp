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

#ifndef LAZYMASK_DECODER_HPP_
#define LAZYMASK_DECODER_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "lazymask/constraints.hpp"
#include "lazymask/decode_state.hpp"
#include "lazymask/instance.hpp"
#include "lazymask/masking.hpp"
#include "lazymask/policy.hpp"
#include "lazymask/rng.hpp"

namespace lazymask {

enum class DecodeMode { kGreedy, kSample };

std::string_view ToString(DecodeMode mode);
DecodeMode ParseDecodeMode(std::string_view text);

struct DecodeOptions {
  BacktrackBudget budget = BacktrackBudget::Unlimited();
  InitStrategy init = InitStrategy::kTsl;
  DecodeMode mode = DecodeMode::kGreedy;
  int rie_cap = kDefaultRieCap;
  // Keep per-step records for gradient computation.
  bool record_steps = false;
  // Take this node at the first position while it remains a root candidate.
  std::optional<int> first_node;
};

struct DecodeResult {
  Route route;
  bool feasible = false;
  double objective = 0.0;
  // Sum of log conditional probabilities of the surviving choices.
  double log_prob = 0.0;
  std::int64_t backtracks_used = 0;
  bool relaxed = false;
  // One record per position of `route` after the depot, when requested.
  std::vector<StepRecord> steps;
};

// Stack-based construction with lazily refined candidate sets.
//
// While the route is incomplete: if the top candidate set is empty and the
// budget admits it (backtracks <= R), pop the last node and remove it from
// its parent's set; if the set is empty and the budget is spent, relax it to
// all unvisited nodes; otherwise pick the next node from the masked policy
// and push a frame initialized by SSL or TSL.
//
// Throws NoFeasibleRoute when the root set is exhausted under an unlimited
// budget. With a finite budget an exhausted root set is relaxed instead.
DecodeResult Decode(const RoutingInstance& instance, const Policy& policy, const DecodeOptions& options,
                    RandomStream& rng);

inline constexpr int kMaxSupportCustomers = 9;

// Every complete route the decoder can emit with nonzero probability under
// an unlimited budget and a full-support policy. Throws TooLargeForExact for
// n > kMaxSupportCustomers.
std::set<Route> EnumerateSupport(const RoutingInstance& instance, InitStrategy init);

struct MultiDecodeOptions {
  int samples = 1;
  bool augment = false;
  // Spread the samples of each variant over distinct first nodes,
  // round-robin over the root candidate set (only when samples <= n).
  bool free_starts = false;
};

// Decodes `samples` routes for each of 1 or 8 (augmented) instance
// variants. Sample s of variant v uses the substream v * samples + s of
// `rng`. Objectives and feasibility are reported on the original instance.
std::vector<DecodeResult> MultiDecode(const RoutingInstance& instance, const Policy& policy,
                                      const DecodeOptions& options, const MultiDecodeOptions& multi,
                                      const RandomStream& rng);

// Feasible result of minimum objective (first on ties), or nullptr.
const DecodeResult* BestFeasible(std::span<const DecodeResult> results);

inline std::vector<double> GradLogProb(const LinearPolicyParams& params, const RoutingInstance& instance,
                                       const DecodeResult& result) {
  return GradLogProb(params, instance, result.steps, static_cast<int>(result.route.size()));
}

}  // namespace lazymask

#endif  // LAZYMASK_DECODER_HPP_
