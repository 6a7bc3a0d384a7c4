#include "gapbp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "gapbp/branch_tree.hpp"
#include "gapbp/rmp.hpp"
#include "gapbp/tolerances.hpp"

namespace gapbp {
namespace {

std::vector<Agent> build_agents(const GapInstance& instance,
                                const NetworkSchedule& schedule, SolveMode mode,
                                bool manages_tree) {
  const double big_m = big_m_cost(instance);
  std::vector<Agent> agents;
  agents.reserve(instance.n_agents());
  for (int i = 0; i < instance.n_agents(); ++i) {
    AgentConfig config;
    config.id = i;
    config.n_agents = instance.n_agents();
    config.n_tasks = instance.n_tasks();
    config.window = schedule.window();
    config.profit_row = instance.profits.row(i);
    config.weight_row = instance.weights.row(i);
    config.capacity = instance.capacity(i);
    config.big_m = big_m;
    config.mode = mode;
    config.manages_tree = manages_tree;
    agents.emplace_back(std::move(config));
  }
  return agents;
}

bool all_halted(const std::vector<Agent>& agents) {
  return std::all_of(agents.begin(), agents.end(),
                     [](const Agent& agent) { return agent.halted(); });
}

void trace_round(std::ostream* trace, long long round, const Agent& agent, int id) {
  if (trace == nullptr) return;
  char hash[20];
  std::snprintf(hash, sizeof(hash), "%016zx", agent.basis().canonical_hash());
  *trace << round << ',' << id << ',' << agent.label() << ',' << hash << ','
         << agent.unchanged_rounds() << ',' << agent.last_event() << '\n';
}

/// One synchronous round of peer messaging: every non-halted agent's state
/// travels along this round's edges, then every non-halted agent steps.
void exchange_and_step(std::vector<Agent>& agents, const NetworkSchedule& schedule,
                       long long round, const RunOptions& options) {
  const int n = static_cast<int>(agents.size());
  std::vector<std::vector<Message>> inboxes(n);
  for (const auto& [from, to] : schedule.edges(round)) {
    if (!agents[from].halted() && !agents[to].halted()) {
      inboxes[to].push_back(agents[from].outbound());
    }
  }
  for (int i = 0; i < n; ++i) {
    if (agents[i].halted()) continue;
    agents[i].step(inboxes[i]);
    trace_round(options.trace, round, agents[i], i);
  }
}

void check_dimensions(const GapInstance& instance, const NetworkSchedule& schedule) {
  validate(instance);
  if (schedule.n_agents() != instance.n_agents()) {
    throw std::invalid_argument("schedule and instance disagree on the agent count");
  }
}

RunResult finish(const std::vector<Agent>& agents, SolveMode mode,
                 long long rounds) {
  RunResult result;
  result.metrics.communication_rounds = rounds;
  result.metrics.relative_error_pct = std::numeric_limits<double>::quiet_NaN();
  for (const auto& agent : agents) {
    result.metrics.max_stored_nodes =
        std::max(result.metrics.max_stored_nodes, agent.tree_high_water());
  }
  const Agent& witness = agents.front();
  if (witness.incumbent().has_value()) {
    result.status =
        mode == SolveMode::exact ? SolveStatus::optimal : SolveStatus::feasible;
    result.assignment = witness.incumbent();
    result.metrics.incumbent_cost = witness.incumbent_cost();
  } else {
    result.status = SolveStatus::infeasible;
    result.metrics.incumbent_cost = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

}  // namespace

RunResult run_distributed(const GapInstance& instance,
                          const NetworkSchedule& schedule,
                          const RunOptions& options) {
  check_dimensions(instance, schedule);
  std::vector<Agent> agents =
      build_agents(instance, schedule, options.mode, /*manages_tree=*/true);

  long long rounds = 0;
  long long node_started = 0;
  long long longest_node = 0;
  int max_label = 0;
  while (!all_halted(agents)) {
    if (rounds >= options.round_cap) {
      throw RoundCapExceeded("distributed run exceeded " +
                             std::to_string(options.round_cap) + " rounds");
    }
    exchange_and_step(agents, schedule, rounds, options);
    ++rounds;
    for (const auto& agent : agents) {
      if (agent.label() > max_label) {
        max_label = agent.label();
        longest_node = std::max(longest_node, rounds - node_started);
        node_started = rounds;
      }
    }
    if (options.on_round) options.on_round(rounds - 1, agents);
  }

  RunResult result = finish(agents, options.mode, rounds);
  result.max_rounds_per_node = std::max(longest_node, rounds - node_started);
  return result;
}

namespace {

/// Coordinator of the cloud-assisted variant: the only holder of the search
/// tree. Consumes one converged basis per subproblem, applies the same
/// adopt/branch/prune rule the peer-to-peer agents use, and replies with the
/// next subproblem's fixings (or the final verdict).
struct Coordinator {
  Tree tree;
  BranchNode current;
  int label = 0;
  bool waiting_for_upload = true;
  double incumbent_cost = -std::numeric_limits<double>::infinity();
  std::optional<Assignment> incumbent;

  struct NodeBroadcast {
    int label = 0;
    std::vector<FixingSet> fixings;
  };
  std::optional<NodeBroadcast> pending_node;
  bool pending_halt = false;

  int n_agents;
  int n_tasks;

  Coordinator(int agents, int tasks)
      : tree(agents), current(tree.extract()), n_agents(agents), n_tasks(tasks) {}

  void process_upload(const Basis& basis, SolveMode mode) {
    waiting_for_upload = false;
    const Extraction extraction = extract_solution(basis, n_agents, n_tasks);
    bool integral = true;
    for (int i = 0; i < n_agents && integral; ++i) {
      for (int m = 0; m < n_tasks; ++m) {
        if (std::abs(extraction.z(i, m) - std::round(extraction.z(i, m))) >
            kIntegralityTol) {
          integral = false;
          break;
        }
      }
    }
    switch (consider(extraction.cost, integral, extraction.contains_artificial,
                     incumbent_cost)) {
      case NodeAction::update_incumbent: {
        incumbent_cost = extraction.integral_cost;
        Assignment x(n_agents, n_tasks);
        for (int i = 0; i < n_agents; ++i) {
          for (int m = 0; m < n_tasks; ++m) {
            x(i, m) = static_cast<int>(std::lround(extraction.z(i, m)));
          }
        }
        incumbent = x;
        if (mode == SolveMode::first_incumbent) {
          pending_halt = true;
          return;
        }
        break;
      }
      case NodeAction::branch:
        tree.branch(current, extraction.z);
        break;
      case NodeAction::prune:
        break;
    }
    if (tree.empty()) {
      pending_halt = true;
      return;
    }
    current = tree.extract();
    ++label;
    pending_node = NodeBroadcast{label, current.fixings};
  }
};

}  // namespace

RunResult run_cloud_assisted(const GapInstance& instance,
                             const NetworkSchedule& schedule,
                             const RunOptions& options) {
  check_dimensions(instance, schedule);
  std::vector<Agent> agents =
      build_agents(instance, schedule, options.mode, /*manages_tree=*/false);
  Coordinator coordinator(instance.n_agents(), instance.n_tasks());

  long long rounds = 0;
  long long node_started = 0;
  long long longest_node = 0;
  bool done = false;
  while (!done) {
    if (coordinator.pending_halt) {
      const double cost =
          coordinator.incumbent.has_value()
              ? coordinator.incumbent_cost
              : std::numeric_limits<double>::quiet_NaN();
      for (auto& agent : agents) agent.halt_with(cost, coordinator.incumbent);
      break;
    }
    if (coordinator.pending_node.has_value()) {
      for (int i = 0; i < instance.n_agents(); ++i) {
        agents[i].apply_node_update(coordinator.pending_node->label,
                                    coordinator.pending_node->fixings[i]);
      }
      coordinator.pending_node.reset();
      coordinator.waiting_for_upload = true;
      longest_node = std::max(longest_node, rounds - node_started);
      node_started = rounds;
    }
    if (rounds >= options.round_cap) {
      throw RoundCapExceeded("cloud-assisted run exceeded " +
                             std::to_string(options.round_cap) + " rounds");
    }
    exchange_and_step(agents, schedule, rounds, options);
    ++rounds;

    // Convergence reports travel to the coordinator between rounds; the
    // first one for the current subproblem carries the agreed basis.
    for (auto& agent : agents) {
      if (!agent.upload_ready()) continue;
      if (coordinator.waiting_for_upload && agent.label() == coordinator.label) {
        coordinator.process_upload(agent.basis(), options.mode);
      }
      agent.mark_uploaded();
    }
    if (options.on_round) options.on_round(rounds - 1, agents);
    done = all_halted(agents);
  }

  RunResult result = finish(agents, options.mode, rounds);
  result.coordinator_stored_nodes = coordinator.tree.high_water();
  result.max_rounds_per_node = std::max(longest_node, rounds - node_started);
  return result;
}

}  // namespace gapbp
