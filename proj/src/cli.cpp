#include "gapbp/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gapbp/generators.hpp"
#include "gapbp/instance_io.hpp"
#include "gapbp/network.hpp"
#include "gapbp/oracle.hpp"
#include "gapbp/scenario.hpp"
#include "gapbp/simulator.hpp"

namespace gapbp {
namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

struct SolveArgs {
  std::string instance_path;
  std::string graph = "cycle";
  std::string mode = "exact";
  std::string variant = "distributed";
  long long round_cap = 1'000'000;
  uint64_t seed = 0;
  std::string out = "-";
};

SolveMode parse_mode(const std::string& text) {
  if (text == "exact") return SolveMode::exact;
  if (text == "first-incumbent") return SolveMode::first_incumbent;
  throw std::invalid_argument("unknown mode: " + text);
}

RunResult run_variant(const GapInstance& instance, const std::string& graph,
                      const std::string& variant, SolveMode mode,
                      long long round_cap, uint64_t seed) {
  NetworkSchedule schedule(parse_schedule_kind(graph), instance.n_agents());
  RunOptions options;
  options.mode = mode;
  options.round_cap = round_cap;
  options.seed = seed;
  if (variant == "cloud") return run_cloud_assisted(instance, schedule, options);
  if (variant == "distributed") return run_distributed(instance, schedule, options);
  throw std::invalid_argument("unknown variant: " + variant);
}

int do_solve(const SolveArgs& args) {
  const GapInstance instance = load_instance_file(args.instance_path);
  RunResult run;
  try {
    run = run_variant(instance, args.graph, args.variant, parse_mode(args.mode),
                      args.round_cap, args.seed);
  } catch (const RoundCapExceeded& err) {
    std::cerr << err.what() << '\n';
    return kExitAborted;
  }

  std::ostringstream text;
  switch (run.status) {
    case SolveStatus::optimal: text << "status optimal\n"; break;
    case SolveStatus::feasible: text << "status feasible\n"; break;
    case SolveStatus::infeasible: text << "status infeasible\n"; break;
  }
  text << "cost " << format_number(run.metrics.incumbent_cost) << '\n';
  text << "rounds " << run.metrics.communication_rounds << '\n';
  text << "stored_nodes " << run.metrics.max_stored_nodes << '\n';
  if (args.variant == "cloud") {
    text << "coordinator_nodes " << run.coordinator_stored_nodes << '\n';
  }
  if (run.assignment.has_value()) {
    text << "assignment\n";
    for (int i = 0; i < instance.n_agents(); ++i) {
      for (int m = 0; m < instance.n_tasks(); ++m) {
        text << (*run.assignment)(i, m) << (m + 1 < instance.n_tasks() ? ' ' : '\n');
      }
    }
  } else {
    text << "assignment none\n";
  }
  write_output(args.out, text.str());

  switch (run.status) {
    case SolveStatus::optimal: return kExitOptimal;
    case SolveStatus::feasible: return kExitFeasible;
    case SolveStatus::infeasible: return kExitInfeasible;
  }
  return kExitUsage;
}

struct CampaignArgs {
  std::string model = "A";
  int n_agents = 5;
  int n_tasks = 20;
  int trials = 20;
  uint64_t seed = 1;
  std::string graph = "cycle";
  std::string mode = "first-incumbent";
  std::string variant = "distributed";
  long long round_cap = 1'000'000;
  std::string out = "-";
};

std::string csv_number(double value, const char* format) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

/// Running mean that ignores missing (NaN) samples.
struct MeanAccumulator {
  double sum = 0.0;
  int count = 0;
  void add(double value) {
    if (std::isnan(value)) return;
    sum += value;
    ++count;
  }
  double mean() const {
    return count == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / count;
  }
};

int do_campaign(const CampaignArgs& args) {
  const Model model = parse_model(args.model);
  const SolveMode mode = parse_mode(args.mode);
  std::ostringstream csv;
  csv << "model,N,M,trial,seed,communication_rounds,incumbent_cost,oracle_cost,"
         "relative_error_pct,max_stored_nodes,variant,wall_time_ms\n";

  MeanAccumulator avg_rounds, avg_cost, avg_oracle, avg_err, avg_nodes, avg_wall;
  for (int trial = 0; trial < args.trials; ++trial) {
    const uint64_t seed = args.seed + static_cast<uint64_t>(trial);
    const GapInstance instance =
        generate(model, args.n_agents, args.n_tasks, seed);

    const auto started = std::chrono::steady_clock::now();
    double rounds = std::numeric_limits<double>::quiet_NaN();
    double cost = std::numeric_limits<double>::quiet_NaN();
    double nodes = std::numeric_limits<double>::quiet_NaN();
    bool solved = false;
    bool feasible = false;
    try {
      const RunResult run = run_variant(instance, args.graph, args.variant, mode,
                                        args.round_cap, seed);
      solved = true;
      feasible = run.assignment.has_value();
      rounds = static_cast<double>(run.metrics.communication_rounds);
      nodes = static_cast<double>(run.metrics.max_stored_nodes);
      if (feasible) cost = run.metrics.incumbent_cost;
    } catch (const RoundCapExceeded&) {
    }

    // Ground truth: exhaustive search when the instance is small enough,
    // otherwise an exact-mode run of the same solver.
    double reference = std::numeric_limits<double>::quiet_NaN();
    bool reference_feasible = false;
    bool reference_known = false;
    if (instance.n_agents() * instance.n_tasks() <= kOracleSizeLimit) {
      const SolveReport report = oracle_solve(instance);
      reference_known = true;
      reference_feasible = report.status == SolveStatus::optimal;
      if (reference_feasible) reference = report.cost;
    } else if (mode == SolveMode::exact) {
      reference_known = solved;
      reference_feasible = feasible;
      reference = cost;
    } else {
      try {
        const RunResult exact = run_variant(instance, args.graph, args.variant,
                                            SolveMode::exact, args.round_cap, seed);
        reference_known = true;
        reference_feasible = exact.assignment.has_value();
        if (reference_feasible) reference = exact.metrics.incumbent_cost;
      } catch (const RoundCapExceeded&) {
      }
    }

    double rel_err = std::numeric_limits<double>::quiet_NaN();
    if (solved && reference_known) {
      if (feasible && reference_feasible && std::abs(reference) > 1e-12) {
        rel_err = 100.0 * (reference - cost) / reference;
      } else if (!feasible && !reference_feasible) {
        rel_err = 0.0;
      }
    }
    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();

    csv << model_letter(model) << ',' << args.n_agents << ',' << args.n_tasks
        << ',' << trial << ',' << seed << ',' << csv_number(rounds, "%.0f") << ','
        << csv_number(cost, "%.10g") << ',' << csv_number(reference, "%.10g")
        << ',' << csv_number(rel_err, "%.4f") << ',' << csv_number(nodes, "%.0f")
        << ',' << args.variant << ',' << wall << '\n';

    avg_rounds.add(rounds);
    avg_cost.add(cost);
    avg_oracle.add(reference);
    avg_err.add(rel_err);
    avg_nodes.add(nodes);
    avg_wall.add(static_cast<double>(wall));
  }

  csv << model_letter(model) << ',' << args.n_agents << ',' << args.n_tasks
      << ",avg,," << csv_number(avg_rounds.mean(), "%.2f") << ','
      << csv_number(avg_cost.mean(), "%.10g") << ','
      << csv_number(avg_oracle.mean(), "%.10g") << ','
      << csv_number(avg_err.mean(), "%.4f") << ','
      << csv_number(avg_nodes.mean(), "%.2f") << ',' << args.variant << ','
      << csv_number(avg_wall.mean(), "%.1f") << '\n';

  write_output(args.out, csv.str());
  return kExitOptimal;
}

int do_dynamic(const std::string& config_path, int64_t seed_override,
               const std::string& out_path) {
  ScenarioConfig config = load_scenario_config(config_path);
  if (seed_override >= 0) config.seed = static_cast<uint64_t>(seed_override);
  const ScenarioEventLog log = simulate(config);

  std::ostringstream text;
  write_event_log(log, text);
  for (const auto& service : log.services) {
    char line[128];
    std::snprintf(line, sizeof(line),
                  "# task %d served by robot %d: start %.3f finish %.3f",
                  service.task, service.robot, service.start_time,
                  service.finish_time);
    text << line << '\n';
  }
  write_output(out_path, text.str());
  return log.completed ? kExitOptimal : kExitAborted;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Distributed branch-and-price toolkit for generalized assignment"};
  app.require_subcommand(1);

  const auto model_check = CLI::IsMember({"A", "B", "C", "D"}, CLI::ignore_case);
  const auto graph_check = CLI::IsMember({"cycle", "complete", "periodic-edge"});
  const auto mode_check = CLI::IsMember({"exact", "first-incumbent"});
  const auto variant_check = CLI::IsMember({"distributed", "cloud"});

  // generate
  std::string gen_model = "A";
  int gen_agents = 5;
  int gen_tasks = 20;
  uint64_t gen_seed = 1;
  std::string gen_out = "-";
  CLI::App* generate_cmd =
      app.add_subcommand("generate", "Write a random benchmark instance");
  generate_cmd->add_option("--model", gen_model)->required()->check(model_check);
  generate_cmd->add_option("--agents", gen_agents)->check(CLI::PositiveNumber);
  generate_cmd->add_option("--tasks", gen_tasks)->check(CLI::PositiveNumber);
  generate_cmd->add_option("--seed", gen_seed);
  generate_cmd->add_option("--out", gen_out);

  // solve
  SolveArgs solve_args;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve one instance file and print the result");
  solve_cmd->add_option("instance", solve_args.instance_path)->required();
  solve_cmd->add_option("--graph", solve_args.graph)->check(graph_check);
  solve_cmd->add_option("--mode", solve_args.mode)->check(mode_check);
  solve_cmd->add_option("--variant", solve_args.variant)->check(variant_check);
  solve_cmd->add_option("--round-cap", solve_args.round_cap);
  solve_cmd->add_option("--seed", solve_args.seed);
  solve_cmd->add_option("--out", solve_args.out);

  // campaign
  CampaignArgs campaign_args;
  CLI::App* campaign_cmd = app.add_subcommand(
      "campaign", "Run repeated random trials and write a CSV of metrics");
  campaign_cmd->add_option("--model", campaign_args.model)
      ->required()
      ->check(model_check);
  campaign_cmd->add_option("--agents", campaign_args.n_agents)
      ->check(CLI::PositiveNumber);
  campaign_cmd->add_option("--tasks", campaign_args.n_tasks)
      ->check(CLI::PositiveNumber);
  campaign_cmd->add_option("--trials", campaign_args.trials)
      ->check(CLI::PositiveNumber);
  campaign_cmd->add_option("--seed", campaign_args.seed);
  campaign_cmd->add_option("--graph", campaign_args.graph)->check(graph_check);
  campaign_cmd->add_option("--mode", campaign_args.mode)->check(mode_check);
  campaign_cmd->add_option("--variant", campaign_args.variant)
      ->check(variant_check);
  campaign_cmd->add_option("--round-cap", campaign_args.round_cap);
  campaign_cmd->add_option("--out", campaign_args.out);

  // dynamic
  std::string dynamic_config;
  int64_t dynamic_seed = -1;
  std::string dynamic_out = "-";
  CLI::App* dynamic_cmd = app.add_subcommand(
      "dynamic", "Simulate a moving-robot servicing scenario from a JSON config");
  dynamic_cmd->add_option("config", dynamic_config)->required();
  dynamic_cmd->add_option("--seed", dynamic_seed);
  dynamic_cmd->add_option("--out", dynamic_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    // app.exit prints the message/help; fold CLI11's error codes into ours
    // (help and version requests exit 0, everything else is a usage error).
    return app.exit(err) == 0 ? kExitOptimal : kExitUsage;
  }

  try {
    if (generate_cmd->parsed()) {
      const GapInstance instance =
          generate(parse_model(gen_model), gen_agents, gen_tasks, gen_seed);
      write_output(gen_out, format_instance(instance));
      return kExitOptimal;
    }
    if (solve_cmd->parsed()) return do_solve(solve_args);
    if (campaign_cmd->parsed()) return do_campaign(campaign_args);
    if (dynamic_cmd->parsed()) {
      return do_dynamic(dynamic_config, dynamic_seed, dynamic_out);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gapbp
