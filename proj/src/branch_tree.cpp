#include "gapbp/branch_tree.hpp"

#include <cmath>
#include <stdexcept>

#include "gapbp/tolerances.hpp"

namespace gapbp {

NodeAction consider(double node_value, bool integral, bool infeasible,
                    double incumbent_value) {
  if (infeasible) return NodeAction::prune;
  if (node_value < incumbent_value) return NodeAction::prune;
  return integral ? NodeAction::update_incumbent : NodeAction::branch;
}

BranchNode::Decision first_fractional(const Eigen::MatrixXd& z) {
  for (Eigen::Index agent = 0; agent < z.rows(); ++agent) {
    for (Eigen::Index task = 0; task < z.cols(); ++task) {
      const double value = z(agent, task);
      if (std::abs(value - std::round(value)) > kIntegralityTol) {
        return {static_cast<int>(agent), static_cast<int>(task), false};
      }
    }
  }
  throw std::logic_error("no fractional entry to branch on");
}

Tree::Tree(int n_agents) : n_agents_(n_agents) {
  if (n_agents < 1) throw std::invalid_argument("tree needs at least one agent");
  BranchNode root;
  root.fixings.resize(n_agents);
  push(std::move(root));
}

BranchNode Tree::extract() {
  if (stack_.empty()) throw std::logic_error("extract from an empty tree");
  BranchNode node = std::move(stack_.back());
  stack_.pop_back();
  ++next_label_;
  return node;
}

void Tree::branch(const BranchNode& parent, const Eigen::MatrixXd& z) {
  const auto [agent, task, ignored] = first_fractional(z);
  (void)ignored;

  BranchNode on = parent;
  on.depth = parent.depth + 1;
  on.decision = BranchNode::Decision{agent, task, true};
  on.fixings[agent].fix(task, true);
  for (int other = 0; other < n_agents_; ++other) {
    if (other != agent) on.fixings[other].fix(task, false);
  }

  BranchNode off = parent;
  off.depth = parent.depth + 1;
  off.decision = BranchNode::Decision{agent, task, false};
  off.fixings[agent].fix(task, false);

  push(std::move(on));
  push(std::move(off));  // extracted first
}

void Tree::push(BranchNode node) {
  stack_.push_back(std::move(node));
  high_water_ = std::max(high_water_, static_cast<int>(stack_.size()));
}

}  // namespace gapbp
