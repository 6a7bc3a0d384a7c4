#include <doctest.h>

#include <Eigen/Dense>
#include <stdexcept>

#include "gapbp/branch_tree.hpp"

using namespace gapbp;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Eigen::MatrixXd half_matrix() {
  Eigen::MatrixXd z(2, 2);
  z << 0.5, 0.5, 0.5, 0.5;
  return z;
}

}  // namespace

TEST_CASE("consider adopts, splits or drops a solved node") {
  CHECK(consider(20.0, true, false, kNegInf) == NodeAction::update_incumbent);
  CHECK(consider(20.0, false, false, 15.0) == NodeAction::branch);
  CHECK(consider(10.0, false, false, 15.0) == NodeAction::prune);
  CHECK(consider(10.0, true, false, 15.0) == NodeAction::prune);
  CHECK(consider(0.0, true, true, kNegInf) == NodeAction::prune);  // infeasible
  // boundary: equal value still updates/branches so ties are never lost
  CHECK(consider(15.0, true, false, 15.0) == NodeAction::update_incumbent);
  CHECK(consider(15.0, false, false, 15.0) == NodeAction::branch);
}

TEST_CASE("the branch variable is the first fractional entry in scan order") {
  const auto first = first_fractional(half_matrix());
  CHECK(first.agent == 0);
  CHECK(first.task == 0);

  Eigen::MatrixXd z(2, 2);
  z << 1.0, 0.0, 0.0, 0.3;
  const auto later = first_fractional(z);
  CHECK(later.agent == 1);
  CHECK(later.task == 1);

  Eigen::MatrixXd integral(2, 2);
  integral << 1.0, 0.0, 0.0, 1.0 - 1e-9;  // inside the integrality tolerance
  CHECK_THROWS_AS(first_fractional(integral), std::logic_error);
}

TEST_CASE("a fresh tree holds only the unconstrained root") {
  Tree tree(2);
  CHECK_FALSE(tree.empty());
  CHECK(tree.size() == 1);
  CHECK(tree.next_label() == 0);
  const BranchNode root = tree.extract();
  CHECK(root.depth == 0);
  CHECK_FALSE(root.decision.has_value());
  REQUIRE(root.fixings.size() == 2);
  CHECK(root.fixings[0].empty());
  CHECK(root.fixings[1].empty());
  CHECK(tree.empty());
  CHECK(tree.next_label() == 1);
  CHECK_THROWS_AS(tree.extract(), std::logic_error);
}

TEST_CASE("branching pushes the one-child first so the zero-child pops first") {
  Tree tree(2);
  const BranchNode root = tree.extract();
  tree.branch(root, half_matrix());
  CHECK(tree.size() == 2);

  const BranchNode zero_child = tree.extract();
  REQUIRE(zero_child.decision.has_value());
  CHECK(zero_child.decision->agent == 0);
  CHECK(zero_child.decision->task == 0);
  CHECK(zero_child.decision->value == false);
  CHECK(zero_child.depth == 1);
  CHECK(zero_child.fixings[0].lookup(0) == std::optional<bool>{false});
  CHECK_FALSE(zero_child.fixings[1].lookup(0).has_value());

  const BranchNode one_child = tree.extract();
  REQUIRE(one_child.decision.has_value());
  CHECK(one_child.decision->value == true);
  CHECK(one_child.fixings[0].lookup(0) == std::optional<bool>{true});
  CHECK(tree.empty());
}

TEST_CASE("fixing a task onto an agent locks it off everyone else") {
  Tree tree(3);
  const BranchNode root = tree.extract();
  Eigen::MatrixXd z(3, 2);
  z << 1.0, 0.0,
       0.0, 0.4,
       0.0, 0.6;
  tree.branch(root, z);  // splits on (agent 1, task 1)
  tree.extract();        // discard the zero child
  const BranchNode one_child = tree.extract();
  CHECK(one_child.fixings[1].lookup(1) == std::optional<bool>{true});
  CHECK(one_child.fixings[0].lookup(1) == std::optional<bool>{false});
  CHECK(one_child.fixings[2].lookup(1) == std::optional<bool>{false});
  // the untouched task stays free everywhere
  for (int agent = 0; agent < 3; ++agent) {
    CHECK_FALSE(one_child.fixings[agent].lookup(0).has_value());
  }
}

TEST_CASE("children extend their parent by exactly one decision") {
  Tree tree(2);
  const BranchNode root = tree.extract();
  tree.branch(root, half_matrix());
  const BranchNode child = tree.extract();
  std::size_t child_pins = 0;
  for (const auto& fs : child.fixings) child_pins += fs.size();
  // the zero child pins one (agent, task) pair and nothing else
  CHECK(child_pins == 1);

  Eigen::MatrixXd z(2, 2);
  z << 0.0, 0.5, 0.5, 0.5;
  tree.branch(child, z);  // splits on (agent 0, task 1)
  const BranchNode grandchild = tree.extract();
  CHECK(grandchild.depth == 2);
  CHECK(grandchild.fixings[0].lookup(0) == std::optional<bool>{false});
  CHECK(grandchild.fixings[0].lookup(1) == std::optional<bool>{false});
}

TEST_CASE("labels count extractions and the high-water mark tracks storage") {
  Tree tree(2);
  CHECK(tree.high_water() == 1);
  const BranchNode root = tree.extract();
  tree.branch(root, half_matrix());
  CHECK(tree.high_water() == 2);
  const BranchNode child = tree.extract();
  CHECK(tree.next_label() == 2);
  Eigen::MatrixXd z(2, 2);
  z << 0.0, 0.5, 0.5, 0.5;
  tree.branch(child, z);
  CHECK(tree.size() == 3);
  CHECK(tree.high_water() == 3);
  while (!tree.empty()) tree.extract();
  CHECK(tree.high_water() == 3);
  CHECK(tree.next_label() == 5);  // root + four children
}
