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

#ifndef LAZYMASK_ORACLE_HPP_
#define LAZYMASK_ORACLE_HPP_

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "lazymask/constraints.hpp"
#include "lazymask/instance.hpp"

namespace lazymask {

inline constexpr int kMaxOracleCustomers = 10;
inline constexpr double kOptimalRelativeTolerance = 1e-9;

// Exhaustive description of an instance's feasible set.
struct FeasibleSetOracle {
  // Feasible routes in lexicographic order, with their objectives.
  std::vector<Route> routes;
  std::vector<double> objectives;
  double f_star = 0.0;
  // Indices into `routes` of the optimal routes.
  std::vector<std::size_t> optimal;
  // Smallest objective margin of a suboptimal feasible route; empty when
  // every feasible route is optimal.
  std::optional<double> delta;

  std::size_t size() const { return routes.size(); }
  bool IsOptimal(std::size_t index) const;
};

// Enumerates all n! depot-rooted routes. Throws TooLargeForExact for
// n > kMaxOracleCustomers and InfeasibleInstance when no route is feasible.
FeasibleSetOracle Enumerate(const RoutingInstance& instance);

// Probabilities over `oracle.routes`, aligned by index.
struct GibbsDistribution {
  double lambda = 0.0;
  std::vector<double> probabilities;
};

// q(pi) proportional to exp(-(f(pi) - f*) / lambda) over the feasible set.
GibbsDistribution Gibbs(const FeasibleSetOracle& oracle, double lambda);

// Uniform distribution over the optimal set.
std::vector<double> OptimalDistribution(const FeasibleSetOracle& oracle);

struct BoundCheck {
  double lambda = 0.0;
  double epsilon = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// Probability under the exact Gibbs distribution of an objective at least
// f* + epsilon, against
//   |C| Delta exp(-Delta / lambda) / (|Pi*| max(epsilon, Delta)) + sqrt(c / (2 lambda)).
// Requires 0 < lambda <= Delta (throws LambdaExceedsDelta) and epsilon > 0.
BoundCheck TheoremBoundCheck(const FeasibleSetOracle& oracle, double lambda, double epsilon,
                             double approximation_constant = 0.0);

// sum p log(p / q). Throws SupportViolation if p puts mass where q has none.
double KlDivergence(std::span<const double> p, std::span<const double> q);
double TotalVariation(std::span<const double> p, std::span<const double> q);

using RouteDistribution = std::map<Route, double>;

RouteDistribution EmpiricalDistribution(std::span<const Route> samples);

// Re-indexes a route distribution onto the oracle's route order; mass on
// routes outside the feasible set is returned in `outside`.
std::vector<double> AlignToOracle(const RouteDistribution& dist, const FeasibleSetOracle& oracle,
                                  double* outside = nullptr);

}  // namespace lazymask

#endif  // LAZYMASK_ORACLE_HPP_
