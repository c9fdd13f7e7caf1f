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

#include "lazymask/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>

#include "lazymask/decoder.hpp"
#include "lazymask/errors.hpp"
#include "lazymask/eval.hpp"
#include "lazymask/io.hpp"
#include "lazymask/oracle.hpp"
#include "lazymask/parallel.hpp"
#include "lazymask/training.hpp"

namespace lazymask {

namespace {

using nlohmann::json;

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

std::vector<RoutingInstance> LoadDataset(const std::string& path) {
  std::ifstream in = OpenIn(path);
  std::vector<RoutingInstance> instances = ReadDataset(in);
  if (instances.empty()) throw DataError("dataset '" + path + "' is empty");
  return instances;
}

BacktrackBudget ParseBudget(const std::string& text) {
  if (text == "inf" || text == "unlimited") return BacktrackBudget::Unlimited();
  std::size_t used = 0;
  long long value = -1;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 0) throw CLI::ValidationError("--budget", "expected a nonnegative integer or 'inf'");
  return BacktrackBudget(value);
}

// Grid entries are multiples of the instance's suboptimality gap.
std::vector<double> ParseGrid(const std::string& text, std::vector<double> fallback, const char* flag) {
  if (text == "auto") return fallback;
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !(v > 0.0)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "expected 'auto' or a comma-separated list of positive numbers");
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty grid");
  return out;
}

struct GenerateArgs {
  std::string problem = "tsptw";
  std::string hardness = "medium";
  int n = 50;
  int count = 1;
  std::uint64_t seed = 0;
  std::optional<double> sigma;
  std::string out;
};

int RunGenerate(const GenerateArgs& a, std::ostream& out) {
  const ProblemKind kind = ParseProblemKind(a.problem);
  const Hardness hardness = ParseHardness(a.hardness);
  std::vector<RoutingInstance> instances;
  instances.reserve(a.count);
  for (int i = 0; i < a.count; ++i) {
    RandomStream rng(a.seed, static_cast<std::uint64_t>(i));
    if (kind == ProblemKind::kTsptw) {
      instances.push_back(GenerateTsptw(a.n, hardness, rng));
    } else {
      instances.push_back(GenerateTspdl(a.n, a.sigma.value_or(TspdlSigmaFor(hardness)), rng));
    }
  }
  std::ofstream file = OpenOut(a.out);
  WriteDataset(file, instances);
  out << "wrote " << instances.size() << " instances to " << a.out << '\n';
  return kExitOk;
}

struct SolveArgs {
  std::string in;
  std::string out;
  std::string policy = "random-c";
  std::string checkpoint;
  std::string init = "tsl";
  std::string budget = "inf";
  std::string mode = "greedy";
  int samples = 1;
  bool augment = false;
  bool free_starts = false;
  std::uint64_t seed = 0;
};

std::unique_ptr<Policy> MakePolicy(const std::string& name, const std::string& checkpoint) {
  if (name == "uniform") return std::make_unique<UniformPolicy>();
  if (name == "random-l") return std::make_unique<RandomLPolicy>();
  if (name == "random-c") return std::make_unique<RandomCPolicy>();
  if (name == "linear") {
    if (checkpoint.empty()) throw CLI::ValidationError("--checkpoint", "the linear policy needs a checkpoint");
    std::ifstream in = OpenIn(checkpoint);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw SchemaViolation("", e.what());
    }
    return std::make_unique<LinearPolicy>(CheckpointFromJson(doc));
  }
  throw CLI::ValidationError("--policy", "unknown policy '" + name + "'");
}

int RunSolve(const SolveArgs& a, std::ostream& out) {
  const std::unique_ptr<Policy> policy = MakePolicy(a.policy, a.checkpoint);
  DecodeOptions opts;
  opts.budget = ParseBudget(a.budget);
  opts.init = ParseInitStrategy(a.init);
  opts.mode = ParseDecodeMode(a.mode);
  if (const auto* linear = dynamic_cast<const LinearPolicy*>(policy.get())) opts.rie_cap = linear->params().rie_cap;
  MultiDecodeOptions multi{a.samples, a.augment, a.free_starts};

  const std::vector<RoutingInstance> instances = LoadDataset(a.in);
  for (const RoutingInstance& inst : instances) {
    if (const auto* linear = dynamic_cast<const LinearPolicy*>(policy.get()); linear && linear->params().kind != inst.kind()) {
      throw DataError("checkpoint problem kind does not match the dataset");
    }
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<ResultRecord> records(instances.size());
  ParallelFor(instances.size(), [&](std::size_t i) {
    ResultRecord& rec = records[i];
    rec.instance_id = static_cast<std::int64_t>(i);
    std::vector<DecodeResult> results;
    try {
      results = MultiDecode(instances[i], *policy, opts, multi, RandomStream(a.seed, i));
    } catch (const NoFeasibleRoute&) {
      rec.solutions = 0;
      return;
    }
    const InstanceOutcome outcome = SummarizeResults(results);
    rec.solutions = outcome.solutions;
    rec.infeasible_solutions = outcome.infeasible_solutions;
    const DecodeResult* best = BestFeasible(results);
    if (best == nullptr) best = &results.front();
    rec.route = best->route;
    rec.objective = best->objective;
    rec.feasible = best->feasible;
    rec.log_prob = best->log_prob;
    rec.backtracks = best->backtracks_used;
    rec.relaxed = best->relaxed;
  });
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream file = OpenOut(a.out);
  WriteRecords(file, records);
  out << "solved " << records.size() << " instances in " << seconds << " s\n";
  return kExitOk;
}

struct TrainArgs {
  std::string problem = "tsptw";
  std::string hardness = "medium";
  int n = 10;
  std::optional<double> sigma;
  TrainConfig cfg;
  std::string init = "tsl";
  std::optional<double> rho_growth;
  double rho_max = 1.0;
  std::string checkpoint_out;
  std::string log_out;
};

int RunTrain(TrainArgs a, std::ostream& out) {
  InstanceSource source{ParseProblemKind(a.problem), a.n, ParseHardness(a.hardness), a.sigma};
  a.cfg.init = ParseInitStrategy(a.init);
  if (a.rho_growth) a.cfg.penalty_schedule = PenaltySchedule{*a.rho_growth, a.rho_max};
  const TrainResult result = Train(a.cfg, source);
  {
    std::ofstream file = OpenOut(a.checkpoint_out);
    file << CheckpointToJson(result.params).dump() << '\n';
  }
  if (!a.log_out.empty()) {
    std::ofstream file = OpenOut(a.log_out);
    WriteTrainLogCsv(file, result.log);
  }
  out << "trained " << result.log.size() << " steps; checkpoint written to " << a.checkpoint_out << '\n';
  return kExitOk;
}

struct EvaluateArgs {
  std::string results;
  std::string reference;
  std::string oracle_dataset;
  std::string out;
};

int RunEvaluate(const EvaluateArgs& a, std::ostream& out) {
  std::ifstream in = OpenIn(a.results);
  const std::vector<ResultRecord> records = ReadRecords(in);
  if (records.empty()) throw DataError("no result records in '" + a.results + "'");
  std::vector<InstanceOutcome> outcomes;
  for (const ResultRecord& r : records) outcomes.push_back(SummarizeRecord(r));

  std::optional<std::vector<std::optional<double>>> reference;
  if (!a.reference.empty()) {
    std::ifstream ref_in = OpenIn(a.reference);
    reference.emplace();
    for (const ResultRecord& r : ReadRecords(ref_in)) {
      reference->push_back(r.feasible ? std::optional<double>(r.objective) : std::nullopt);
    }
  } else if (!a.oracle_dataset.empty()) {
    reference.emplace();
    for (const RoutingInstance& inst : LoadDataset(a.oracle_dataset)) {
      try {
        reference->push_back(Enumerate(inst).f_star);
      } catch (const InfeasibleInstance&) {
        reference->push_back(std::nullopt);
      }
    }
  }
  EvalReport report = reference ? Evaluate(outcomes, std::span<const std::optional<double>>(*reference)) : Evaluate(outcomes);
  const std::string text = ReportToJson(report).dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    std::ofstream file = OpenOut(a.out);
    file << text;
  }
  return kExitOk;
}

struct OracleCheckArgs {
  std::string in;
  std::string lambda_grid = "auto";
  std::string epsilon_grid = "auto";
  std::string report;
};

int RunOracleCheck(const OracleCheckArgs& a, std::ostream& out) {
  const std::vector<double> lambdas = ParseGrid(a.lambda_grid, {1.0, 0.5, 0.2, 0.05}, "--lambda-grid");
  const std::vector<double> epsilons = ParseGrid(a.epsilon_grid, {0.5, 1.0, 2.0}, "--epsilon-grid");
  for (double l : lambdas) {
    if (l > 1.0) throw CLI::ValidationError("--lambda-grid", "lambda multiples must not exceed 1 (lambda <= gap)");
  }
  const std::vector<RoutingInstance> instances = LoadDataset(a.in);
  json report = json::array();
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    FeasibleSetOracle oracle;
    try {
      oracle = Enumerate(instances[i]);
    } catch (const InfeasibleInstance&) {
      ++skipped;
      continue;
    }
    if (!oracle.delta) {
      ++skipped;
      continue;
    }
    const double delta = *oracle.delta;
    for (double lm : lambdas) {
      for (double em : epsilons) {
        const BoundCheck c = TheoremBoundCheck(oracle, lm * delta, em * delta);
        ++checks;
        failures += c.holds ? 0 : 1;
        report.push_back({{"instance_id", i},
                          {"lambda", c.lambda},
                          {"epsilon", c.epsilon},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"holds", c.holds}});
      }
    }
  }
  std::ofstream file = OpenOut(a.report);
  file << report.dump(2) << '\n';
  out << checks << " checks, " << failures << " violated, " << skipped << " instances skipped\n";
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

struct ParseBenchmarkArgs {
  std::string in;
  std::string out;
};

int RunParseBenchmark(const ParseBenchmarkArgs& a, std::ostream& out) {
  std::ifstream in = OpenIn(a.in);
  const RoutingInstance inst = ParseBenchmark(in);
  std::ofstream file = OpenOut(a.out);
  WriteDataset(file, std::span<const RoutingInstance>(&inst, 1));
  out << "parsed " << inst.num_customers() << " customers\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained routing with lazily refined feasibility masks", "lazymask"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Generate a synthetic dataset");
  generate->add_option("--problem", gen.problem, "tsptw or tspdl")->check(CLI::IsMember({"tsptw", "tspdl"}));
  generate->add_option("--hardness", gen.hardness, "easy, medium or hard")->check(CLI::IsMember({"easy", "medium", "hard"}));
  generate->add_option("--n", gen.n, "Customers per instance")->check(CLI::PositiveNumber);
  generate->add_option("--count", gen.count, "Number of instances")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--sigma", gen.sigma, "TSPDL restricted-node percentage")->check(CLI::Range(0.0, 100.0));
  generate->add_option("--out", gen.out, "Output JSONL dataset")->required();

  SolveArgs sol;
  CLI::App* solve = app.add_subcommand("solve", "Decode routes for a dataset");
  solve->add_option("--in", sol.in, "Input JSONL dataset")->required();
  solve->add_option("--out", sol.out, "Output JSONL results")->required();
  solve->add_option("--policy", sol.policy, "uniform, random-l, random-c or linear");
  solve->add_option("--checkpoint", sol.checkpoint, "Linear policy checkpoint");
  solve->add_option("--init", sol.init, "ssl or tsl")->check(CLI::IsMember({"ssl", "tsl"}));
  solve->add_option("--budget", sol.budget, "Backtracking budget (integer or inf)");
  solve->add_option("--mode", sol.mode, "greedy or sample")->check(CLI::IsMember({"greedy", "sample"}));
  solve->add_option("--samples", sol.samples, "Samples per variant")->check(CLI::PositiveNumber);
  solve->add_flag("--augment", sol.augment, "Decode all 8 dihedral variants");
  solve->add_flag("--free-starts", sol.free_starts, "Distinct first nodes per variant");
  solve->add_option("--seed", sol.seed, "Random seed");

  TrainArgs tr;
  CLI::App* train = app.add_subcommand("train", "Train the linear policy");
  train->add_option("--problem", tr.problem, "tsptw or tspdl")->check(CLI::IsMember({"tsptw", "tspdl"}));
  train->add_option("--hardness", tr.hardness, "easy, medium or hard")->check(CLI::IsMember({"easy", "medium", "hard"}));
  train->add_option("--n", tr.n, "Customers per instance")->check(CLI::PositiveNumber);
  train->add_option("--sigma", tr.sigma, "TSPDL restricted-node percentage")->check(CLI::Range(0.0, 100.0));
  train->add_option("--steps", tr.cfg.steps, "Training steps")->check(CLI::NonNegativeNumber);
  train->add_option("--batch", tr.cfg.batch_size, "Instances per batch")->check(CLI::PositiveNumber);
  train->add_option("--samples", tr.cfg.samples_per_instance, "Samples per instance")->check(CLI::Range(2, 1 << 20));
  train->add_option("--lambda", tr.cfg.lambda, "Entropy coefficient")->check(CLI::NonNegativeNumber);
  train->add_option("--rho", tr.cfg.rho, "Penalty weight")->check(CLI::NonNegativeNumber);
  train->add_option("--rho-growth", tr.rho_growth, "Per-step penalty growth factor");
  train->add_option("--rho-max", tr.rho_max, "Penalty weight cap for the schedule");
  train->add_option("--budget", tr.cfg.train_budget, "Training backtracking budget")->check(CLI::NonNegativeNumber);
  train->add_option("--lr", tr.cfg.learning_rate, "Learning rate")->check(CLI::PositiveNumber);
  train->add_option("--rie-cap", tr.cfg.rie_cap, "Refinement feature cap")->check(CLI::PositiveNumber);
  train->add_option("--init", tr.init, "ssl or tsl")->check(CLI::IsMember({"ssl", "tsl"}));
  train->add_option("--seed", tr.cfg.seed, "Random seed");
  train->add_option("--checkpoint-out", tr.checkpoint_out, "Output checkpoint JSON")->required();
  train->add_option("--log-out", tr.log_out, "Output CSV training log");

  EvaluateArgs ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Compute metrics for solve results");
  evaluate->add_option("--results", ev.results, "JSONL results from solve")->required();
  auto* ref_opt = evaluate->add_option("--reference", ev.reference, "JSONL reference results");
  evaluate->add_option("--oracle", ev.oracle_dataset, "Dataset whose exact optima serve as reference")->excludes(ref_opt);
  evaluate->add_option("--out", ev.out, "Output report JSON (stdout if omitted)");

  OracleCheckArgs oc;
  CLI::App* oracle = app.add_subcommand("oracle-check", "Verify the Gibbs tail bound by enumeration");
  oracle->add_option("--in", oc.in, "Small-instance JSONL dataset")->required();
  oracle->add_option("--lambda-grid", oc.lambda_grid, "auto or multiples of the gap, e.g. 1,0.5");
  oracle->add_option("--epsilon-grid", oc.epsilon_grid, "auto or multiples of the gap");
  oracle->add_option("--report", oc.report, "Output report JSON")->required();

  ParseBenchmarkArgs pb;
  CLI::App* parse = app.add_subcommand("parse-benchmark", "Convert columnar TSPTW text to JSONL");
  parse->add_option("--in", pb.in, "Benchmark text file")->required();
  parse->add_option("--out", pb.out, "Output JSONL")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return RunGenerate(gen, out);
    if (solve->parsed()) return RunSolve(sol, out);
    if (train->parsed()) return RunTrain(tr, out);
    if (evaluate->parsed()) return RunEvaluate(ev, out);
    if (oracle->parsed()) return RunOracleCheck(oc, out);
    if (parse->parsed()) return RunParseBenchmark(pb, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace lazymask
