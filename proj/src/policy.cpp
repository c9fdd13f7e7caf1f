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

#include "lazymask/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lazymask/errors.hpp"

namespace lazymask {

namespace {

// Logit used in place of log(1/inf) so unclipped softmax stays finite.
constexpr double kLogitFloor = -1e300;

double Clamp(double v) { return std::clamp(v, -kFeatureClamp, kFeatureClamp); }

double InverseLogit(double value) {
  const double logit = -std::log(value + kLogitEpsilon);
  return std::isfinite(logit) ? logit : kLogitFloor;
}

}  // namespace

std::vector<double> MaskedSoftmax(std::span<const double> logits, const NodeSet& candidates,
                                  std::optional<double> clip) {
  if (candidates.Empty()) throw EmptyCandidateSet();
  std::vector<double> probs(logits.size(), 0.0);
  double max_score = -std::numeric_limits<double>::infinity();
  candidates.ForEach([&](int j) {
    const double score = clip ? *clip * std::tanh(logits[j]) : logits[j];
    probs[j] = score;
    max_score = std::max(max_score, score);
  });
  double total = 0.0;
  candidates.ForEach([&](int j) {
    probs[j] = std::exp(probs[j] - max_score);
    total += probs[j];
  });
  candidates.ForEach([&](int j) { probs[j] /= total; });
  return probs;
}

void UniformPolicy::Logits(const RoutingInstance&, const DecodeState&, const RieFeatures&,
                           std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
}

void RandomLPolicy::Logits(const RoutingInstance& instance, const DecodeState& state, const RieFeatures&,
                           std::span<double> out) const {
  const int current = state.current();
  for (int j = 0; j < instance.num_nodes(); ++j) out[j] = InverseLogit(instance.distance(current, j));
}

void RandomCPolicy::Logits(const RoutingInstance& instance, const DecodeState&, const RieFeatures&,
                           std::span<double> out) const {
  for (int j = 0; j < instance.num_nodes(); ++j) {
    const double limit =
        instance.kind() == ProblemKind::kTsptw ? instance.windows()[j].due : instance.draft_limits()[j];
    out[j] = InverseLogit(limit);
  }
}

int BaseFeatureCount(ProblemKind kind) { return kind == ProblemKind::kTsptw ? 5 : 4; }

int FeatureDimension(ProblemKind kind, int rie_cap) { return BaseFeatureCount(kind) + rie_cap + 2; }

void StepFeatures(const RoutingInstance& instance, const StepContext& ctx, int node, std::span<double> out) {
  const double dist = instance.distance(ctx.current, node);
  const double remaining_fraction =
      static_cast<double>(ctx.unvisited) / static_cast<double>(std::max(1, instance.num_customers()));
  std::size_t k = 0;
  out[k++] = dist;
  if (instance.kind() == ProblemKind::kTsptw) {
    const TimeWindow& w = instance.windows()[node];
    const double arrival = ctx.scalar + instance.duration(ctx.current, node);
    out[k++] = Clamp(w.due - arrival);
    out[k++] = Clamp(w.due - w.ready);
    out[k++] = Clamp(std::max(w.ready - arrival, 0.0));
  } else {
    const double load = ctx.scalar + instance.demands()[node];
    out[k++] = Clamp(instance.draft_limits()[node] - load);
    out[k++] = instance.demands()[node];
  }
  out[k++] = remaining_fraction;
  for (double v : ctx.rie.local) out[k++] = v;
  out[k++] = ctx.rie.global[0];
  out[k++] = ctx.rie.global[1];
}

LinearPolicyParams LinearPolicyParams::Zeros(ProblemKind kind, int rie_cap) {
  LinearPolicyParams params;
  params.kind = kind;
  params.rie_cap = rie_cap;
  params.theta.assign(FeatureDimension(kind, rie_cap), 0.0);
  return params;
}

namespace {

void CheckParams(const LinearPolicyParams& params, const RoutingInstance& instance) {
  if (params.kind != instance.kind()) throw WrongProblemKind("policy trained for a different problem kind");
  if (params.dimension() != FeatureDimension(params.kind, params.rie_cap)) {
    throw ShapeMismatch("theta has " + std::to_string(params.dimension()) + " entries, expected " +
                        std::to_string(FeatureDimension(params.kind, params.rie_cap)));
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LinearPolicy::LinearPolicy(LinearPolicyParams params) : params_(std::move(params)) {
  if (!(params_.clip > 0.0)) throw Error("clip constant must be positive");
  if (params_.feature_version != kFeatureVersion) throw Error("unsupported feature version");
  if (params_.rie_cap < 1) throw Error("refinement feature cap must be positive");
  if (params_.dimension() != FeatureDimension(params_.kind, params_.rie_cap)) {
    throw ShapeMismatch("theta does not match the feature dimension");
  }
  for (double v : params_.theta) {
    if (!std::isfinite(v)) throw Error("policy parameters must be finite");
  }
}

std::vector<double> LinearLogits(const LinearPolicyParams& params, const RoutingInstance& instance,
                                 const StepContext& ctx, const NodeSet& candidates) {
  CheckParams(params, instance);
  std::vector<double> logits(instance.num_nodes(), 0.0);
  std::vector<double> features(params.dimension());
  candidates.ForEach([&](int j) {
    StepFeatures(instance, ctx, j, features);
    logits[j] = Dot(params.theta, features);
  });
  return logits;
}

void LinearPolicy::Logits(const RoutingInstance& instance, const DecodeState& state, const RieFeatures& rie,
                          std::span<double> out) const {
  if (static_cast<int>(rie.local.size()) != params_.rie_cap) {
    throw ShapeMismatch("refinement feature cap does not match the policy");
  }
  const std::vector<double> logits = LinearLogits(params_, instance, StepContext::From(state, rie), state.top().members);
  std::copy(logits.begin(), logits.end(), out.begin());
}

namespace {

// Clipped scores a_j = C tanh(theta . F_j) for the step's candidates, and
// the log of their normalizer.
struct ScoredStep {
  std::vector<double> features;  // candidates x dimension, row-major
  std::vector<double> pre;       // theta . F_j
  std::vector<double> score;     // C tanh(pre)
  double log_normalizer = 0.0;
  std::size_t chosen_row = 0;
};

ScoredStep Score(const LinearPolicyParams& params, const RoutingInstance& instance, const StepRecord& step) {
  const std::size_t dim = params.theta.size();
  ScoredStep s;
  s.features.resize(step.candidates.size() * dim);
  s.pre.resize(step.candidates.size());
  s.score.resize(step.candidates.size());
  bool found = false;
  double max_score = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < step.candidates.size(); ++r) {
    std::span<double> row(s.features.data() + r * dim, dim);
    StepFeatures(instance, step.context, step.candidates[r], row);
    s.pre[r] = Dot(params.theta, row);
    s.score[r] = params.clip * std::tanh(s.pre[r]);
    max_score = std::max(max_score, s.score[r]);
    if (step.candidates[r] == step.chosen) {
      s.chosen_row = r;
      found = true;
    }
  }
  if (!found) throw MissingStepRecord("chosen node is not among the recorded candidates");
  double total = 0.0;
  for (double a : s.score) total += std::exp(a - max_score);
  s.log_normalizer = max_score + std::log(total);
  return s;
}

}  // namespace

double LinearLogProb(const LinearPolicyParams& params, const RoutingInstance& instance,
                     std::span<const StepRecord> steps) {
  CheckParams(params, instance);
  double total = 0.0;
  for (const StepRecord& step : steps) {
    if (step.candidates.size() < 2) continue;
    const ScoredStep s = Score(params, instance, step);
    total += s.score[s.chosen_row] - s.log_normalizer;
  }
  return total;
}

std::vector<double> GradLogProb(const LinearPolicyParams& params, const RoutingInstance& instance,
                                std::span<const StepRecord> steps, int route_length) {
  CheckParams(params, instance);
  if (route_length < 1 || static_cast<int>(steps.size()) != route_length - 1) {
    throw MissingStepRecord("decode result carries " + std::to_string(steps.size()) + " step records for " +
                            std::to_string(route_length - 1) + " decisions");
  }
  const std::size_t dim = params.theta.size();
  std::vector<double> grad(dim, 0.0);
  for (const StepRecord& step : steps) {
    // A forced choice contributes a constant log-probability.
    if (step.candidates.size() < 2) continue;
    const ScoredStep s = Score(params, instance, step);
    for (std::size_t r = 0; r < step.candidates.size(); ++r) {
      const double p = std::exp(s.score[r] - s.log_normalizer);
      const double t = std::tanh(s.pre[r]);
      const double dscore = params.clip * (1.0 - t * t);
      const double weight = (r == s.chosen_row ? 1.0 : 0.0) - p;
      const double* row = s.features.data() + r * dim;
      for (std::size_t k = 0; k < dim; ++k) grad[k] += weight * dscore * row[k];
    }
  }
  return grad;
}

}  // namespace lazymask
