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

#ifndef LAZYMASK_TRAINING_HPP_
#define LAZYMASK_TRAINING_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "lazymask/decoder.hpp"
#include "lazymask/instance.hpp"
#include "lazymask/masking.hpp"
#include "lazymask/policy.hpp"

namespace lazymask {

// Exponentially increasing penalty weight rho_k = min(growth^k * rho, max).
struct PenaltySchedule {
  double growth = 1.0;
  double max_rho = 1.0;
};

struct TrainConfig {
  double lambda = 0.01;       // entropy coefficient
  double rho = 1.0;           // penalty weight
  std::int64_t train_budget = 5;
  int samples_per_instance = 16;
  int batch_size = 16;
  int steps = 500;
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double grad_clip = 1.0;
  InitStrategy init = InitStrategy::kTsl;
  int rie_cap = kDefaultRieCap;
  std::uint64_t seed = 0;
  std::optional<PenaltySchedule> penalty_schedule;

  void Validate() const;
  double RhoAt(int step) const;
};

// Distribution that training batches are drawn from.
struct InstanceSource {
  ProblemKind kind = ProblemKind::kTsptw;
  int n = 10;
  Hardness hardness = Hardness::kMedium;
  // TSPDL restricted percentage; defaults to the hardness level's value.
  std::optional<double> sigma_pct;

  RoutingInstance Draw(RandomStream& rng) const;
};

struct SampleOutcome {
  double penalized_cost = 0.0;
  double log_prob = 0.0;
};

// A_j = Psi_j - mean(Psi) + lambda * log p_j. Throws TooFewSamples for
// fewer than two samples.
std::vector<double> Advantages(std::span<const SampleOutcome> samples, double lambda);

struct BatchStats {
  double mean_penalized_cost = 0.0;
  double infeasible_fraction = 0.0;
  double mean_backtracks = 0.0;
};

struct BatchGradient {
  std::vector<double> gradient;
  BatchStats stats;
};

// (1 / BN) sum_i sum_j A_ij grad log p(pi_ij) over sampled decodes with the
// training budget. Instance i draws its samples from rng.Split(i); the
// reduction runs in instance order.
BatchGradient ComputeBatchGradient(const LinearPolicyParams& params, std::span<const RoutingInstance> batch,
                                   const TrainConfig& cfg, double rho, const RandomStream& rng);

// Per-instance gradient from already decoded samples.
std::vector<double> InstanceGradient(const LinearPolicyParams& params, const RoutingInstance& instance,
                                     std::span<const DecodeResult> samples, double rho, double lambda);

struct OptimizerState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::int64_t step = 0;

  static OptimizerState For(std::size_t dimension);
};

// Adam update after rescaling the gradient to norm <= cfg.grad_clip.
// Throws ShapeMismatch when shapes disagree.
void OptimizerStep(OptimizerState& state, std::vector<double>& theta, std::span<const double> gradient,
                   const TrainConfig& cfg);

struct TrainLogRow {
  int step = 0;
  double mean_penalized_cost = 0.0;
  double infeasible_fraction = 0.0;
  double grad_norm = 0.0;
  double mean_backtracks = 0.0;
};

struct TrainResult {
  LinearPolicyParams params;
  std::vector<TrainLogRow> log;
};

TrainResult Train(const TrainConfig& cfg, const InstanceSource& source,
                  std::optional<LinearPolicyParams> init = std::nullopt);

void WriteTrainLogCsv(std::ostream& out, std::span<const TrainLogRow> rows);

}  // namespace lazymask

#endif  // LAZYMASK_TRAINING_HPP_
