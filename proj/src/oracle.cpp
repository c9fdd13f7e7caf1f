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

#include "lazymask/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lazymask/errors.hpp"
#include "lazymask/parallel.hpp"

namespace lazymask {

bool FeasibleSetOracle::IsOptimal(std::size_t index) const {
  return std::binary_search(optimal.begin(), optimal.end(), index);
}

namespace {

struct Branch {
  std::vector<Route> routes;
  std::vector<double> objectives;
};

// All feasible routes whose first customer is `first`, in lexicographic
// order.
Branch EnumerateBranch(const RoutingInstance& instance, int first) {
  const int nodes = instance.num_nodes();
  Route route(nodes);
  route[0] = 0;
  route[1] = first;
  std::vector<int> rest;
  for (int j = 1; j < nodes; ++j) {
    if (j != first) rest.push_back(j);
  }
  Branch out;
  do {
    std::copy(rest.begin(), rest.end(), route.begin() + 2);
    double scalar = 0.0;
    bool feasible = WithinLimit(instance, 0, scalar);
    for (int t = 1; t < nodes && feasible; ++t) {
      scalar = Advance(instance, route[t - 1], scalar, route[t]);
      feasible = WithinLimit(instance, route[t], scalar);
    }
    if (!feasible) continue;
    double length = 0.0;
    for (int t = 1; t < nodes; ++t) length += instance.distance(route[t - 1], route[t]);
    length += instance.distance(route[nodes - 1], route[0]);
    out.routes.push_back(route);
    out.objectives.push_back(length);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

}  // namespace

FeasibleSetOracle Enumerate(const RoutingInstance& instance) {
  const int n = instance.num_customers();
  if (n > kMaxOracleCustomers) {
    throw TooLargeForExact("oracle enumeration needs n <= " + std::to_string(kMaxOracleCustomers));
  }
  std::vector<Branch> branches(n);
  ParallelFor(static_cast<std::size_t>(n), [&](std::size_t b) {
    branches[b] = EnumerateBranch(instance, static_cast<int>(b) + 1);
  });

  FeasibleSetOracle oracle;
  for (Branch& b : branches) {
    std::move(b.routes.begin(), b.routes.end(), std::back_inserter(oracle.routes));
    oracle.objectives.insert(oracle.objectives.end(), b.objectives.begin(), b.objectives.end());
  }
  if (oracle.routes.empty()) throw InfeasibleInstance();

  oracle.f_star = *std::min_element(oracle.objectives.begin(), oracle.objectives.end());
  const double cutoff = oracle.f_star * (1.0 + kOptimalRelativeTolerance);
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const double gap = oracle.objectives[i] - oracle.f_star;
    if (oracle.objectives[i] <= cutoff) {
      oracle.optimal.push_back(i);
    } else if (!oracle.delta || gap < *oracle.delta) {
      oracle.delta = gap;
    }
  }
  return oracle;
}

GibbsDistribution Gibbs(const FeasibleSetOracle& oracle, double lambda) {
  if (!(lambda > 0.0)) throw Error("Gibbs temperature must be positive");
  if (oracle.routes.empty()) throw InfeasibleInstance();
  GibbsDistribution q;
  q.lambda = lambda;
  q.probabilities.resize(oracle.size());
  double z = 0.0;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    q.probabilities[i] = std::exp(-(oracle.objectives[i] - oracle.f_star) / lambda);
    z += q.probabilities[i];
  }
  for (double& p : q.probabilities) p /= z;
  return q;
}

std::vector<double> OptimalDistribution(const FeasibleSetOracle& oracle) {
  std::vector<double> q(oracle.size(), 0.0);
  const double mass = 1.0 / static_cast<double>(oracle.optimal.size());
  for (std::size_t i : oracle.optimal) q[i] = mass;
  return q;
}

BoundCheck TheoremBoundCheck(const FeasibleSetOracle& oracle, double lambda, double epsilon,
                             double approximation_constant) {
  if (!(lambda > 0.0) || !(epsilon > 0.0)) throw Error("bound check needs lambda > 0 and epsilon > 0");
  if (oracle.delta && lambda > *oracle.delta) {
    throw LambdaExceedsDelta("lambda " + std::to_string(lambda) + " exceeds the suboptimality gap " +
                             std::to_string(*oracle.delta));
  }
  const GibbsDistribution q = Gibbs(oracle, lambda);
  BoundCheck check;
  check.lambda = lambda;
  check.epsilon = epsilon;
  const double threshold = oracle.f_star + epsilon;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    if (oracle.objectives[i] >= threshold) check.lhs += q.probabilities[i];
  }
  if (oracle.delta) {
    const double delta = *oracle.delta;
    check.rhs = static_cast<double>(oracle.size()) * delta * std::exp(-delta / lambda) /
                (static_cast<double>(oracle.optimal.size()) * std::max(epsilon, delta));
  }
  check.rhs += std::sqrt(approximation_constant / (2.0 * lambda));
  check.holds = check.lhs <= check.rhs + 1e-12;
  return check;
}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ShapeMismatch("distributions have different support sizes");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) throw SupportViolation("p has mass outside the support of q at index " + std::to_string(i));
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(kl, 0.0);
}

double TotalVariation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ShapeMismatch("distributions have different support sizes");
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

RouteDistribution EmpiricalDistribution(std::span<const Route> samples) {
  RouteDistribution dist;
  if (samples.empty()) return dist;
  for (const Route& r : samples) dist[r] += 1.0;
  for (auto& [route, mass] : dist) mass /= static_cast<double>(samples.size());
  return dist;
}

std::vector<double> AlignToOracle(const RouteDistribution& dist, const FeasibleSetOracle& oracle, double* outside) {
  std::vector<double> aligned(oracle.size(), 0.0);
  double rest = 0.0;
  for (const auto& [route, mass] : dist) {
    const auto it = std::lower_bound(oracle.routes.begin(), oracle.routes.end(), route);
    if (it != oracle.routes.end() && *it == route) {
      aligned[static_cast<std::size_t>(it - oracle.routes.begin())] = mass;
    } else {
      rest += mass;
    }
  }
  if (outside != nullptr) *outside = rest;
  return aligned;
}

}  // namespace lazymask
