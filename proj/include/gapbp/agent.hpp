#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gapbp/branch_tree.hpp"
#include "gapbp/column.hpp"
#include "gapbp/instance.hpp"
#include "gapbp/pricing.hpp"
#include "gapbp/rmp.hpp"

namespace gapbp {

/// What one agent broadcasts to its out-neighbours each round: its current
/// master basis and the index of the subproblem it is working on.
struct Message {
  int sender = 0;
  int label = 0;
  Basis basis;
};

enum class SolveMode { exact, first_incumbent };

/// True once a basis has survived unchanged long enough (2 * n_agents *
/// window + 1 consecutive rounds) to certify network-wide agreement under
/// the connectivity assumption.
bool detect_convergence(int unchanged_rounds, int n_agents, int window);

struct AgentConfig {
  int id = 0;
  int n_agents = 0;
  int n_tasks = 0;
  /// Window length over which the union of communication graphs is strongly
  /// connected.
  int window = 1;
  Eigen::VectorXd profit_row;
  Eigen::VectorXd weight_row;
  double capacity = 0.0;
  double big_m = 0.0;
  SolveMode mode = SolveMode::exact;
  /// Owns a local copy of the search tree (peer-to-peer operation). When
  /// false the agent only generates columns and reports convergence; node
  /// bookkeeping lives with an external coordinator.
  bool manages_tree = true;
};

/// One processor of the distributed solver. Each round it merges the bases
/// received from in-neighbours working on the same subproblem, re-solves the
/// restricted master, prices one new column from its private data and pivots
/// it in. Once its basis has been stable for the convergence threshold it
/// advances the subproblem: adopt an integral solution, branch a fractional
/// one, or prune — identically on every agent, so the search stays in
/// lockstep without central control.
class Agent {
 public:
  explicit Agent(AgentConfig config);

  /// One synchronous round. `inbox` holds the messages from this round's
  /// in-neighbours; stale labels are ignored, a newer label fast-forwards
  /// this agent to the sender's subproblem.
  void step(const std::vector<Message>& inbox);

  Message outbound() const;

  bool halted() const { return halted_; }
  int label() const { return label_; }
  const Basis& basis() const { return basis_; }
  int unchanged_rounds() const { return unchanged_rounds_; }
  int convergence_threshold() const;
  const FixingSet& fixings() const { return fixings_; }

  double incumbent_cost() const { return incumbent_cost_; }
  const std::optional<Assignment>& incumbent() const { return incumbent_; }

  /// Search-tree memory high-water mark (0 when the agent holds no tree).
  int tree_high_water() const;

  /// Coordinator hooks for the cloud-assisted variant.
  bool upload_ready() const { return upload_ready_; }
  void mark_uploaded();
  void apply_node_update(int new_label, const FixingSet& fixings);
  void halt_with(double cost, const std::optional<Assignment>& assignment);

  /// Tag describing what the last step did (for trace logs).
  const std::string& last_event() const { return last_event_; }

 private:
  void run_column_generation(const std::vector<Message>& inbox);
  void advance_node();
  void load_node_fixings(const FixingSet& fixings);

  AgentConfig config_;
  Basis basis_;
  std::string basis_canonical_;
  std::vector<Column> seed_columns_;  // still-feasible own columns after a node switch
  FixingSet fixings_;
  int label_ = 0;
  int unchanged_rounds_ = 0;
  bool halted_ = false;
  bool upload_ready_ = false;

  std::optional<Tree> tree_;
  std::optional<BranchNode> current_node_;
  double incumbent_cost_;
  std::optional<Assignment> incumbent_;
  std::string last_event_ = "init";
};

}  // namespace gapbp
