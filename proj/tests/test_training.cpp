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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lazymask/errors.hpp"
#include "lazymask/training.hpp"
#include "test_support.hpp"

namespace lazymask {
namespace {

namespace t = lazymask::testing;

TEST(AdvantageTest, SharedBaseline) {
  const std::vector<SampleOutcome> s{{3.0, -1.0}, {5.0, -2.0}};
  EXPECT_EQ(Advantages(s, 0.0), (std::vector<double>{-1.0, 1.0}));
  const std::vector<SampleOutcome> same{{2.0, -1.0}, {2.0, -3.0}, {2.0, -0.5}};
  EXPECT_EQ(Advantages(same, 0.0), (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(AdvantageTest, MeanIsLambdaTimesMeanLogProb) {
  RandomStream rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SampleOutcome> s(2 + rng.Below(10));
    double mean_log_prob = 0.0;
    for (SampleOutcome& o : s) {
      o = {rng.Uniform(0, 10), -rng.Uniform(0, 20)};
      mean_log_prob += o.log_prob / static_cast<double>(s.size());
    }
    const double lambda = rng.Uniform(0, 0.1);
    const std::vector<double> a = Advantages(s, lambda);
    double mean = 0.0;
    for (double v : a) mean += v / static_cast<double>(a.size());
    EXPECT_NEAR(mean, lambda * mean_log_prob, 1e-12);
  }
}

TEST(AdvantageTest, NeedsTwoSamples) {
  const std::vector<SampleOutcome> one{{1.0, 0.0}};
  EXPECT_THROW(Advantages(one, 0.0), TooFewSamples);
  TrainConfig cfg;
  cfg.samples_per_instance = 1;
  EXPECT_THROW(cfg.Validate(), TooFewSamples);
}

TEST(OptimizerTest, ZeroGradientKeepsTheta) {
  TrainConfig cfg;
  OptimizerState state = OptimizerState::For(3);
  state.first_moment = {0.5, -0.5, 1.0};
  state.second_moment = {0.25, 0.25, 1.0};
  state.step = 4;
  std::vector<double> theta{1.0, 2.0, 3.0};
  const std::vector<double> zero(3, 0.0);
  OptimizerStep(state, theta, zero, cfg);
  // Moments decay; the update uses the decayed first moment.
  EXPECT_DOUBLE_EQ(state.first_moment[0], 0.45);
  EXPECT_DOUBLE_EQ(state.second_moment[0], 0.25 * 0.999);
  std::vector<double> untouched{1.0, 2.0, 3.0};
  OptimizerState fresh = OptimizerState::For(3);
  OptimizerStep(fresh, untouched, zero, cfg);
  EXPECT_EQ(untouched, (std::vector<double>{1.0, 2.0, 3.0}));
}

TEST(OptimizerTest, FirstStepMovesAgainstSign) {
  TrainConfig cfg;
  cfg.learning_rate = 0.1;
  OptimizerState state = OptimizerState::For(3);
  std::vector<double> theta(3, 0.0);
  const std::vector<double> g{0.3, -0.02, 0.0};
  OptimizerStep(state, theta, g, cfg);
  EXPECT_NEAR(theta[0], -0.1, 1e-6);
  EXPECT_NEAR(theta[1], 0.1, 1e-5);
  EXPECT_EQ(theta[2], 0.0);
  EXPECT_EQ(state.step, 1);
}

TEST(OptimizerTest, ClipsGradientNorm) {
  TrainConfig cfg;
  cfg.beta1 = 0.0;
  OptimizerState state = OptimizerState::For(2);
  std::vector<double> theta(2, 0.0);
  const std::vector<double> g{30.0, 40.0};
  OptimizerStep(state, theta, g, cfg);
  EXPECT_NEAR(state.first_moment[0], 0.6, 1e-15);
  EXPECT_NEAR(state.first_moment[1], 0.8, 1e-15);
}

TEST(OptimizerTest, ConvergesOnQuadratic) {
  // f(theta) = sum a_k (theta_k - c_k)^2 has its minimum at c.
  const std::vector<double> a{1.0, 4.0, 0.5};
  const std::vector<double> c{0.3, -0.2, 0.1};
  TrainConfig cfg;
  cfg.learning_rate = 0.02;
  OptimizerState state = OptimizerState::For(3);
  std::vector<double> theta(3, 0.0);
  for (int step = 0; step < 100; ++step) {
    std::vector<double> g(3);
    for (int k = 0; k < 3; ++k) g[k] = 2 * a[k] * (theta[k] - c[k]);
    OptimizerStep(state, theta, g, cfg);
  }
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(theta[k], c[k], 1e-3) << k;
}

TEST(OptimizerTest, ShapeMismatch) {
  TrainConfig cfg;
  OptimizerState state = OptimizerState::For(2);
  std::vector<double> theta(3, 0.0);
  EXPECT_THROW(OptimizerStep(state, theta, std::vector<double>(3, 0.0), cfg), ShapeMismatch);
}

TEST(PenaltyScheduleTest, GrowsAndCaps) {
  TrainConfig cfg;
  EXPECT_EQ(cfg.RhoAt(100), 1.0);
  cfg.penalty_schedule = PenaltySchedule{2.0, 5.0};
  EXPECT_EQ(cfg.RhoAt(0), 1.0);
  EXPECT_EQ(cfg.RhoAt(2), 4.0);
  EXPECT_EQ(cfg.RhoAt(3), 5.0);
}

TEST(BatchGradientTest, EqualCostsGiveZeroGradient) {
  RandomStream rng(3);
  const RoutingInstance inst = GenerateTsptw(6, Hardness::kHard, rng);
  LinearPolicyParams params = LinearPolicyParams::Zeros(ProblemKind::kTsptw);
  DecodeOptions opts;
  opts.mode = DecodeMode::kSample;
  opts.record_steps = true;
  RandomStream stream(4);
  const DecodeResult r = Decode(inst, LinearPolicy(params), opts, stream);
  const std::vector<DecodeResult> copies(4, r);
  for (double g : InstanceGradient(params, inst, copies, 1.0, 0.0)) EXPECT_EQ(g, 0.0);
}

TEST(BatchGradientTest, TwoSamplesByHand) {
  RandomStream rng(5);
  const RoutingInstance inst = t::UnconstrainedInstance(ProblemKind::kTsptw, 3, rng);
  LinearPolicyParams params = LinearPolicyParams::Zeros(ProblemKind::kTsptw);
  params.theta[0] = -0.7;
  TrainConfig cfg;
  cfg.samples_per_instance = 2;
  cfg.batch_size = 1;
  cfg.lambda = 0.05;
  const std::vector<RoutingInstance> batch{inst};
  const RandomStream root(6);
  const BatchGradient bg = ComputeBatchGradient(params, batch, cfg, 1.0, root);

  // Replay the two samples from the documented substreams.
  DecodeOptions opts;
  opts.budget = BacktrackBudget(cfg.train_budget);
  opts.mode = DecodeMode::kSample;
  opts.record_steps = true;
  std::vector<DecodeResult> samples;
  for (int j = 0; j < 2; ++j) {
    RandomStream s = root.Split(0).Split(j);
    samples.push_back(Decode(inst, LinearPolicy(params), opts, s));
  }
  const double f0 = t::ReferenceLength(inst, samples[0].route);
  const double f1 = t::ReferenceLength(inst, samples[1].route);
  const double a0 = f0 - (f0 + f1) / 2 + cfg.lambda * samples[0].log_prob;
  const double a1 = f1 - (f0 + f1) / 2 + cfg.lambda * samples[1].log_prob;
  const std::vector<double> g0 = GradLogProb(params, inst, samples[0]);
  const std::vector<double> g1 = GradLogProb(params, inst, samples[1]);
  for (std::size_t k = 0; k < g0.size(); ++k) EXPECT_NEAR(bg.gradient[k], (a0 * g0[k] + a1 * g1[k]) / 2, 1e-12);
  EXPECT_NEAR(bg.stats.mean_penalized_cost, (f0 + f1) / 2, 1e-12);
  EXPECT_EQ(bg.stats.infeasible_fraction, 0.0);
}

TEST(BatchGradientTest, SampleOrderDoesNotMatter) {
  RandomStream rng(7);
  const RoutingInstance inst = GenerateTsptw(7, Hardness::kHard, rng);
  LinearPolicyParams params = LinearPolicyParams::Zeros(ProblemKind::kTsptw);
  for (double& w : params.theta) w = rng.Uniform(-0.3, 0.3);
  DecodeOptions opts;
  opts.mode = DecodeMode::kSample;
  opts.record_steps = true;
  opts.budget = BacktrackBudget(2);
  std::vector<DecodeResult> samples;
  for (int j = 0; j < 6; ++j) {
    RandomStream s(8, j);
    samples.push_back(Decode(inst, LinearPolicy(params), opts, s));
  }
  const std::vector<double> forward = InstanceGradient(params, inst, samples, 1.0, 0.01);
  std::reverse(samples.begin(), samples.end());
  const std::vector<double> backward = InstanceGradient(params, inst, samples, 1.0, 0.01);
  for (std::size_t k = 0; k < forward.size(); ++k) EXPECT_NEAR(forward[k], backward[k], 1e-12);
}

// Exact expected objective of the policy on an unconstrained instance,
// where every step's candidate set is the unvisited nodes.
double ExpectedLength(const LinearPolicyParams& params, const RoutingInstance& inst) {
  double total = 0.0;
  t::ForEachRoute(inst, [&](const std::vector<int>& route) {
    DecodeState state(inst, BacktrackBudget(5));
    std::vector<StepRecord> steps;
    for (std::size_t k = 1; k < route.size(); ++k) {
      StepRecord rec;
      rec.context = StepContext::From(state, ComputeRieFeatures(state, params.rie_cap));
      rec.candidates = state.Unvisited().ToVector();
      rec.chosen = route[k];
      steps.push_back(rec);
      state.Push(route[k]);
    }
    total += std::exp(LinearLogProb(params, inst, steps)) * t::ReferenceLength(inst, route);
  });
  return total;
}

TEST(BatchGradientTest, MonteCarloMeanMatchesExactGradient) {
  RandomStream rng(9);
  const RoutingInstance inst = t::UnconstrainedInstance(ProblemKind::kTsptw, 4, rng);
  LinearPolicyParams params = LinearPolicyParams::Zeros(ProblemKind::kTsptw);
  for (int k = 0; k < BaseFeatureCount(ProblemKind::kTsptw); ++k) params.theta[k] = rng.Uniform(-0.5, 0.5);
  TrainConfig cfg;
  cfg.lambda = 0.0;
  cfg.batch_size = 1;
  cfg.samples_per_instance = 8;
  const std::vector<RoutingInstance> batch{inst};

  const int seeds = 1000;
  const std::size_t dim = params.theta.size();
  std::vector<double> mean(dim, 0.0);
  std::vector<double> sq(dim, 0.0);
  for (int s = 0; s < seeds; ++s) {
    const BatchGradient bg = ComputeBatchGradient(params, batch, cfg, 1.0, RandomStream(100, s));
    for (std::size_t k = 0; k < dim; ++k) {
      mean[k] += bg.gradient[k] / seeds;
      sq[k] += bg.gradient[k] * bg.gradient[k] / seeds;
    }
  }
  // With a leave-in baseline the estimator's expectation is (N-1)/N times
  // the gradient of the expected cost.
  const double shrink = (cfg.samples_per_instance - 1.0) / cfg.samples_per_instance;
  const double h = 1e-5;
  for (std::size_t k = 0; k < dim; ++k) {
    LinearPolicyParams up = params;
    LinearPolicyParams down = params;
    up.theta[k] += h;
    down.theta[k] -= h;
    const double exact = shrink * (ExpectedLength(up, inst) - ExpectedLength(down, inst)) / (2 * h);
    const double se = std::sqrt(std::max(sq[k] - mean[k] * mean[k], 0.0) / seeds);
    EXPECT_LE(std::abs(mean[k] - exact), 3 * se + 1e-9) << "k=" << k << " mean=" << mean[k] << " exact=" << exact;
  }
}

TEST(TrainTest, ZeroStepsReturnsInitialization) {
  TrainConfig cfg;
  cfg.steps = 0;
  const InstanceSource source{ProblemKind::kTsptw, 5, Hardness::kMedium, std::nullopt};
  const TrainResult r = Train(cfg, source);
  EXPECT_EQ(r.params.theta, LinearPolicyParams::Zeros(ProblemKind::kTsptw).theta);
  EXPECT_TRUE(r.log.empty());
  LinearPolicyParams init = LinearPolicyParams::Zeros(ProblemKind::kTsptw);
  init.theta[0] = 0.25;
  EXPECT_EQ(Train(cfg, source, init).params.theta, init.theta);
}

TEST(TrainTest, BitReproducible) {
  TrainConfig cfg;
  cfg.steps = 6;
  cfg.batch_size = 3;
  cfg.samples_per_instance = 4;
  cfg.seed = 12;
  const InstanceSource source{ProblemKind::kTspdl, 6, Hardness::kMedium, std::nullopt};
  const TrainResult a = Train(cfg, source);
  const TrainResult b = Train(cfg, source);
  EXPECT_EQ(a.params.theta, b.params.theta);
  ASSERT_EQ(a.log.size(), 6u);
  std::ostringstream sa;
  std::ostringstream sb;
  WriteTrainLogCsv(sa, a.log);
  WriteTrainLogCsv(sb, b.log);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str().substr(0, sa.str().find('\n')), "step,mean_penalized_cost,infeasible_frac,grad_norm,backtracks_mean");
  cfg.seed = 13;
  EXPECT_NE(Train(cfg, source).params.theta, a.params.theta);
}

TEST(TrainTest, LambdaChangesResult) {
  TrainConfig cfg;
  cfg.steps = 5;
  cfg.batch_size = 2;
  cfg.samples_per_instance = 4;
  const InstanceSource source{ProblemKind::kTsptw, 6, Hardness::kHard, std::nullopt};
  std::vector<std::vector<double>> finals;
  for (double lambda : {0.0, 0.01, 0.05}) {
    cfg.lambda = lambda;
    finals.push_back(Train(cfg, source).params.theta);
  }
  EXPECT_NE(finals[0], finals[1]);
  EXPECT_NE(finals[1], finals[2]);
}

}  // namespace
}  // namespace lazymask
