#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gapbp/pricing.hpp"

namespace gapbp {

/// One subproblem of the branch-and-price search: a full set of per-agent
/// task fixings. Besides the root, every node records the single branching
/// decision that created it; fixing a task onto an agent also fixes it off
/// every other agent, since each task goes to exactly one.
struct BranchNode {
  struct Decision {
    int agent = 0;
    int task = 0;
    bool value = false;
  };

  std::vector<FixingSet> fixings;  // indexed by agent
  int depth = 0;
  std::optional<Decision> decision;
};

/// What to do with a solved node, given its relaxation value against the
/// incumbent: adopt it, split it, or drop it. Values below the incumbent
/// prune strictly; equal values still branch (or update), so alternative
/// optima are never lost.
enum class NodeAction { update_incumbent, branch, prune };

NodeAction consider(double node_value, bool integral, bool infeasible,
                    double incumbent_value);

/// First entry of z (agents outermost, tasks innermost) further than the
/// integrality tolerance from 0/1. Throws std::logic_error when z is
/// integral.
BranchNode::Decision first_fractional(const Eigen::MatrixXd& z);

/// Depth-first stack of open subproblems. Processing order is
/// deterministic: branching pushes the fix-to-one child first and the
/// fix-to-zero child second, so the zero child is extracted first.
class Tree {
 public:
  /// Starts with the unconstrained root as the only open node.
  explicit Tree(int n_agents);

  bool empty() const { return stack_.empty(); }
  int size() const { return static_cast<int>(stack_.size()); }
  /// Most nodes ever stored at once (memory high-water mark).
  int high_water() const { return high_water_; }
  /// Label the next extracted subproblem will receive.
  int next_label() const { return next_label_; }

  /// Pops the most recently pushed node. Throws std::logic_error when empty.
  BranchNode extract();

  /// Splits `parent` on the first fractional entry of `z` and pushes both
  /// children.
  void branch(const BranchNode& parent, const Eigen::MatrixXd& z);

 private:
  void push(BranchNode node);

  std::vector<BranchNode> stack_;
  int n_agents_ = 0;
  int next_label_ = 0;
  int high_water_ = 0;
};

}  // namespace gapbp
