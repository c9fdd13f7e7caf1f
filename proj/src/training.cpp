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

#include "lazymask/training.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <string>

#include "lazymask/constraints.hpp"
#include "lazymask/errors.hpp"
#include "lazymask/parallel.hpp"

namespace lazymask {

void TrainConfig::Validate() const {
  if (!(lambda >= 0.0)) throw Error("lambda must be >= 0");
  if (!(rho >= 0.0)) throw Error("rho must be >= 0");
  if (samples_per_instance < 2) throw TooFewSamples("the shared baseline needs at least 2 samples per instance");
  if (batch_size < 1) throw Error("batch size must be >= 1");
  if (steps < 0) throw Error("step count must be >= 0");
  if (train_budget < 0) throw Error("training budget must be >= 0");
  if (!(learning_rate > 0.0)) throw Error("learning rate must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw Error("moment decay rates must be in [0, 1)");
  if (!(grad_clip > 0.0)) throw Error("gradient clip must be positive");
}

double TrainConfig::RhoAt(int step) const {
  if (!penalty_schedule) return rho;
  return std::min(std::pow(penalty_schedule->growth, step) * rho, penalty_schedule->max_rho);
}

RoutingInstance InstanceSource::Draw(RandomStream& rng) const {
  if (kind == ProblemKind::kTsptw) return GenerateTsptw(n, hardness, rng);
  return GenerateTspdl(n, sigma_pct.value_or(TspdlSigmaFor(hardness)), rng);
}

std::vector<double> Advantages(std::span<const SampleOutcome> samples, double lambda) {
  if (samples.size() < 2) throw TooFewSamples("advantage needs at least 2 samples, got " + std::to_string(samples.size()));
  double baseline = 0.0;
  for (const SampleOutcome& s : samples) baseline += s.penalized_cost;
  baseline /= static_cast<double>(samples.size());
  std::vector<double> out;
  out.reserve(samples.size());
  for (const SampleOutcome& s : samples) out.push_back(s.penalized_cost - baseline + lambda * s.log_prob);
  return out;
}

std::vector<double> InstanceGradient(const LinearPolicyParams& params, const RoutingInstance& instance,
                                     std::span<const DecodeResult> samples, double rho, double lambda) {
  std::vector<SampleOutcome> outcomes;
  outcomes.reserve(samples.size());
  for (const DecodeResult& r : samples) outcomes.push_back({Penalty(instance, r.route, rho), r.log_prob});
  const std::vector<double> advantages = Advantages(outcomes, lambda);
  std::vector<double> grad(params.theta.size(), 0.0);
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (advantages[j] == 0.0) continue;
    const std::vector<double> g = GradLogProb(params, instance, samples[j]);
    for (std::size_t k = 0; k < grad.size(); ++k) grad[k] += advantages[j] * g[k];
  }
  return grad;
}

BatchGradient ComputeBatchGradient(const LinearPolicyParams& params, std::span<const RoutingInstance> batch,
                                   const TrainConfig& cfg, double rho, const RandomStream& rng) {
  cfg.Validate();
  const LinearPolicy policy(params);
  DecodeOptions opts;
  opts.budget = BacktrackBudget(cfg.train_budget);
  opts.init = cfg.init;
  opts.mode = DecodeMode::kSample;
  opts.rie_cap = params.rie_cap;
  opts.record_steps = true;

  struct PerInstance {
    std::vector<double> gradient;
    double cost = 0.0;
    int infeasible = 0;
    double backtracks = 0.0;
  };
  std::vector<PerInstance> parts(batch.size());
  ParallelFor(batch.size(), [&](std::size_t i) {
    const RandomStream instance_rng = rng.Split(i);
    std::vector<DecodeResult> samples;
    samples.reserve(cfg.samples_per_instance);
    for (int j = 0; j < cfg.samples_per_instance; ++j) {
      RandomStream stream = instance_rng.Split(static_cast<std::uint64_t>(j));
      samples.push_back(Decode(batch[i], policy, opts, stream));
    }
    PerInstance& part = parts[i];
    part.gradient = InstanceGradient(params, batch[i], samples, rho, cfg.lambda);
    for (const DecodeResult& r : samples) {
      part.cost += Penalty(batch[i], r.route, rho);
      part.infeasible += r.feasible ? 0 : 1;
      part.backtracks += static_cast<double>(r.backtracks_used);
    }
  });

  BatchGradient out;
  out.gradient.assign(params.theta.size(), 0.0);
  for (const PerInstance& part : parts) {
    for (std::size_t k = 0; k < out.gradient.size(); ++k) out.gradient[k] += part.gradient[k];
    out.stats.mean_penalized_cost += part.cost;
    out.stats.infeasible_fraction += part.infeasible;
    out.stats.mean_backtracks += part.backtracks;
  }
  const double total = static_cast<double>(batch.size()) * cfg.samples_per_instance;
  for (double& g : out.gradient) g /= total;
  out.stats.mean_penalized_cost /= total;
  out.stats.infeasible_fraction /= total;
  out.stats.mean_backtracks /= total;
  return out;
}

OptimizerState OptimizerState::For(std::size_t dimension) {
  return {std::vector<double>(dimension, 0.0), std::vector<double>(dimension, 0.0), 0};
}

void OptimizerStep(OptimizerState& state, std::vector<double>& theta, std::span<const double> gradient,
                   const TrainConfig& cfg) {
  if (gradient.size() != theta.size() || state.first_moment.size() != theta.size() ||
      state.second_moment.size() != theta.size()) {
    throw ShapeMismatch("optimizer state, parameters and gradient must have equal length");
  }
  double norm = 0.0;
  for (double g : gradient) norm += g * g;
  norm = std::sqrt(norm);
  const double scale = norm > cfg.grad_clip ? cfg.grad_clip / norm : 1.0;

  ++state.step;
  const double correction1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double correction2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double g = gradient[k] * scale;
    state.first_moment[k] = cfg.beta1 * state.first_moment[k] + (1.0 - cfg.beta1) * g;
    state.second_moment[k] = cfg.beta2 * state.second_moment[k] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = state.first_moment[k] / correction1;
    const double v_hat = state.second_moment[k] / correction2;
    theta[k] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_epsilon);
  }
}

TrainResult Train(const TrainConfig& cfg, const InstanceSource& source, std::optional<LinearPolicyParams> init) {
  cfg.Validate();
  TrainResult result;
  result.params = init ? std::move(*init) : LinearPolicyParams::Zeros(source.kind, cfg.rie_cap);
  if (result.params.kind != source.kind) throw WrongProblemKind("initial policy does not match the instance source");
  OptimizerState optimizer = OptimizerState::For(result.params.theta.size());
  const RandomStream root(cfg.seed);

  for (int step = 0; step < cfg.steps; ++step) {
    const RandomStream data_rng = root.Split(2 * static_cast<std::uint64_t>(step));
    const RandomStream sample_rng = root.Split(2 * static_cast<std::uint64_t>(step) + 1);
    std::vector<RoutingInstance> batch;
    batch.reserve(cfg.batch_size);
    for (int i = 0; i < cfg.batch_size; ++i) {
      RandomStream instance_rng = data_rng.Split(static_cast<std::uint64_t>(i));
      batch.push_back(source.Draw(instance_rng));
    }
    const BatchGradient bg = ComputeBatchGradient(result.params, batch, cfg, cfg.RhoAt(step), sample_rng);

    double norm = 0.0;
    for (double g : bg.gradient) norm += g * g;
    result.log.push_back({step, bg.stats.mean_penalized_cost, bg.stats.infeasible_fraction, std::sqrt(norm),
                          bg.stats.mean_backtracks});
    OptimizerStep(optimizer, result.params.theta, bg.gradient, cfg);
  }
  return result;
}

void WriteTrainLogCsv(std::ostream& out, std::span<const TrainLogRow> rows) {
  out << "step,mean_penalized_cost,infeasible_frac,grad_norm,backtracks_mean\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (const TrainLogRow& row : rows) {
    out << row.step << ',' << row.mean_penalized_cost << ',' << row.infeasible_fraction << ',' << row.grad_norm << ','
        << row.mean_backtracks << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace lazymask
