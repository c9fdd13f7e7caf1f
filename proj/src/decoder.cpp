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

#include "lazymask/decoder.hpp"

#include <cmath>
#include <string>

#include "lazymask/errors.hpp"

namespace lazymask {

std::string_view ToString(DecodeMode mode) { return mode == DecodeMode::kGreedy ? "greedy" : "sample"; }

DecodeMode ParseDecodeMode(std::string_view text) {
  if (text == "greedy") return DecodeMode::kGreedy;
  if (text == "sample") return DecodeMode::kSample;
  throw DataError("unknown decode mode '" + std::string(text) + "'");
}

namespace {

int PickGreedy(const NodeSet& candidates, const std::vector<double>& probs) {
  int best = -1;
  candidates.ForEach([&](int j) {
    if (best < 0 || probs[j] > probs[best]) best = j;
  });
  return best;
}

int PickSample(const NodeSet& candidates, const std::vector<double>& probs, RandomStream& rng) {
  const double u = rng.Uniform();
  double cumulative = 0.0;
  int last = -1;
  int picked = -1;
  candidates.ForEach([&](int j) {
    if (picked >= 0) return;
    last = j;
    cumulative += probs[j];
    if (u < cumulative && probs[j] > 0.0) picked = j;
  });
  return picked >= 0 ? picked : last;
}

}  // namespace

DecodeResult Decode(const RoutingInstance& instance, const Policy& policy, const DecodeOptions& options,
                    RandomStream& rng) {
  DecodeState state(instance, options.budget);
  state.top() = InitCandidates(options.init, instance, state);

  std::vector<double> logits(instance.num_nodes(), 0.0);
  std::vector<double> log_probs;
  std::vector<StepRecord> steps;
  log_probs.reserve(instance.num_nodes());

  while (!state.complete()) {
    if (state.top().Empty()) {
      if (state.budget().AllowsBacktrack(state.backtracks()) && state.prefix().size() > 1) {
        state.Backtrack();
        log_probs.pop_back();
        if (options.record_steps) steps.pop_back();
        continue;
      }
      if (state.prefix().size() == 1 && state.budget().unlimited()) throw NoFeasibleRoute();
      state.Relax();
    }

    const RieFeatures rie = ComputeRieFeatures(state, options.rie_cap);
    policy.Logits(instance, state, rie, logits);
    const NodeSet& candidates = state.top().members;
    const std::vector<double> probs = MaskedSoftmax(logits, candidates, policy.clip());

    int next;
    if (state.prefix().size() == 1 && options.first_node && candidates.Contains(*options.first_node)) {
      next = *options.first_node;
    } else if (options.mode == DecodeMode::kGreedy) {
      next = PickGreedy(candidates, probs);
    } else {
      next = PickSample(candidates, probs, rng);
    }

    log_probs.push_back(std::log(probs[next]));
    if (options.record_steps) {
      steps.push_back({StepContext::From(state, rie), candidates.ToVector(), next, probs[next]});
    }
    state.Push(next);
    if (!state.complete()) state.top() = InitCandidates(options.init, instance, state);
  }

  DecodeResult result;
  result.route.assign(state.prefix().begin(), state.prefix().end());
  result.feasible = CheckFeasible(instance, result.route).feasible;
  result.objective = Objective(instance, result.route);
  for (double lp : log_probs) result.log_prob += lp;
  result.backtracks_used = state.backtracks();
  result.relaxed = state.relaxed();
  result.steps = std::move(steps);
  return result;
}

namespace {

// Depth-first walk over every branch of the decode tree. Popping a child
// refines the parent exactly as the decoder would; since a node is only
// removed after its whole subtree is exhausted, the leaves reached are the
// decoder's full support.
void Explore(const RoutingInstance& instance, InitStrategy init, DecodeState& state, std::set<Route>& out) {
  if (state.complete()) {
    out.emplace(state.prefix().begin(), state.prefix().end());
    return;
  }
  state.top() = InitCandidates(init, instance, state);
  const std::vector<int> children = state.top().members.ToVector();
  for (int child : children) {
    state.Push(child);
    Explore(instance, init, state, out);
    state.Backtrack();
  }
}

}  // namespace

std::set<Route> EnumerateSupport(const RoutingInstance& instance, InitStrategy init) {
  if (instance.num_customers() > kMaxSupportCustomers) {
    throw TooLargeForExact("support enumeration needs n <= " + std::to_string(kMaxSupportCustomers));
  }
  DecodeState state(instance, BacktrackBudget::Unlimited());
  std::set<Route> out;
  Explore(instance, init, state, out);
  return out;
}

std::vector<DecodeResult> MultiDecode(const RoutingInstance& instance, const Policy& policy,
                                      const DecodeOptions& options, const MultiDecodeOptions& multi,
                                      const RandomStream& rng) {
  if (multi.samples < 1) throw Error("multi-decode needs at least one sample");
  std::vector<RoutingInstance> variants;
  if (multi.augment) {
    auto all = DihedralAugment(instance);
    variants.assign(all.begin(), all.end());
  } else {
    variants.push_back(instance);
  }

  std::vector<DecodeResult> results;
  results.reserve(variants.size() * multi.samples);
  for (std::size_t v = 0; v < variants.size(); ++v) {
    const RoutingInstance& variant = variants[v];
    std::vector<int> roots;
    if (multi.free_starts && multi.samples <= instance.num_customers()) {
      DecodeState root(variant, options.budget);
      roots = InitCandidates(options.init, variant, root).members.ToVector();
    }
    for (int s = 0; s < multi.samples; ++s) {
      DecodeOptions opts = options;
      if (!roots.empty()) opts.first_node = roots[s % roots.size()];
      RandomStream stream = rng.Split(v * multi.samples + s);
      DecodeResult r = Decode(variant, policy, opts, stream);
      if (multi.augment) {
        r.feasible = CheckFeasible(instance, r.route).feasible;
        r.objective = Objective(instance, r.route);
      }
      results.push_back(std::move(r));
    }
  }
  return results;
}

const DecodeResult* BestFeasible(std::span<const DecodeResult> results) {
  const DecodeResult* best = nullptr;
  for (const DecodeResult& r : results) {
    if (r.feasible && (best == nullptr || r.objective < best->objective)) best = &r;
  }
  return best;
}

}  // namespace lazymask
