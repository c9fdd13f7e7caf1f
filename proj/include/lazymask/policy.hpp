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

#ifndef LAZYMASK_POLICY_HPP_
#define LAZYMASK_POLICY_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lazymask/decode_state.hpp"
#include "lazymask/instance.hpp"
#include "lazymask/node_set.hpp"

namespace lazymask {

// Maps a decode state to one logit per node. Masking is applied
// downstream by MaskedSoftmax; values for non-candidates are ignored.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual void Logits(const RoutingInstance& instance, const DecodeState& state, const RieFeatures& rie,
                      std::span<double> out) const = 0;

  // Tanh clipping constant applied before the softmax, or nullopt for raw
  // logits.
  virtual std::optional<double> clip() const { return std::nullopt; }

  virtual std::string name() const = 0;
};

inline constexpr double kDefaultClip = 10.0;
inline constexpr double kLogitEpsilon = 1e-6;
inline constexpr double kFeatureClamp = 10.0;

// p_i = softmax(C * tanh(z_i) + M_i) with M_i = 0 on candidates and -inf
// elsewhere; without a clip constant the raw logits are used. Throws
// EmptyCandidateSet.
std::vector<double> MaskedSoftmax(std::span<const double> logits, const NodeSet& candidates,
                                  std::optional<double> clip);

class UniformPolicy final : public Policy {
 public:
  void Logits(const RoutingInstance& instance, const DecodeState& state, const RieFeatures& rie,
              std::span<double> out) const override;
  std::string name() const override { return "uniform"; }
};

// Probabilities proportional to inverse distance from the current node.
class RandomLPolicy final : public Policy {
 public:
  void Logits(const RoutingInstance& instance, const DecodeState& state, const RieFeatures& rie,
              std::span<double> out) const override;
  std::string name() const override { return "random-l"; }
};

// Probabilities proportional to the inverse due time (TSPTW) or draft limit
// (TSPDL).
class RandomCPolicy final : public Policy {
 public:
  void Logits(const RoutingInstance& instance, const DecodeState& state, const RieFeatures& rie,
              std::span<double> out) const override;
  std::string name() const override { return "random-c"; }
};

inline constexpr int kFeatureVersion = 1;

// Per-candidate feature layout of the linear policy.
//
//   TSPTW: distance, slack, window width, ready gap, remaining fraction
//   TSPDL: distance, draft residual, demand, remaining fraction
//
// followed by the refinement-intensity features (cap + 2 entries). Slack,
// residual, width, and ready gap are clamped to [-kFeatureClamp,
// kFeatureClamp].
int BaseFeatureCount(ProblemKind kind);
int FeatureDimension(ProblemKind kind, int rie_cap);
void StepFeatures(const RoutingInstance& instance, const StepContext& ctx, int node, std::span<double> out);

struct LinearPolicyParams {
  ProblemKind kind = ProblemKind::kTsptw;
  int feature_version = kFeatureVersion;
  int rie_cap = kDefaultRieCap;
  std::vector<double> theta;
  double clip = kDefaultClip;

  static LinearPolicyParams Zeros(ProblemKind kind, int rie_cap = kDefaultRieCap);
  int dimension() const { return static_cast<int>(theta.size()); }
};

// z_j = theta . StepFeatures(j), clipped with tanh downstream.
class LinearPolicy final : public Policy {
 public:
  explicit LinearPolicy(LinearPolicyParams params);

  void Logits(const RoutingInstance& instance, const DecodeState& state, const RieFeatures& rie,
              std::span<double> out) const override;
  std::optional<double> clip() const override { return params_.clip; }
  std::string name() const override { return "linear"; }

  const LinearPolicyParams& params() const { return params_; }

 private:
  LinearPolicyParams params_;
};

std::vector<double> LinearLogits(const LinearPolicyParams& params, const RoutingInstance& instance,
                                 const StepContext& ctx, const NodeSet& candidates);

// What the decoder saw and chose at one surviving position of the route.
struct StepRecord {
  StepContext context;
  std::vector<int> candidates;
  int chosen = 0;
  double probability = 1.0;
};

// sum_t log p_theta(chosen_t | step t) re-evaluated for `params` on the
// recorded candidate sets.
double LinearLogProb(const LinearPolicyParams& params, const RoutingInstance& instance,
                     std::span<const StepRecord> steps);

// Analytic gradient of LinearLogProb with respect to theta. Throws
// MissingStepRecord when `steps` does not cover the `route_length - 1`
// decisions of a complete route.
std::vector<double> GradLogProb(const LinearPolicyParams& params, const RoutingInstance& instance,
                                std::span<const StepRecord> steps, int route_length);

}  // namespace lazymask

#endif  // LAZYMASK_POLICY_HPP_
