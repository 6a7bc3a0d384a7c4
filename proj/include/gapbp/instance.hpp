#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

namespace gapbp {

/// One generalized-assignment instance: n_agents x n_tasks profit and weight
/// matrices plus one capacity per agent. Every task must go to exactly one
/// agent; each agent's total assigned weight must stay within its capacity.
///
/// Weights are integer-valued (stored as doubles); profits and capacities may
/// be any reals. The objective is to maximize total profit.
struct GapInstance {
  Eigen::MatrixXd profits;   // n_agents x n_tasks
  Eigen::MatrixXd weights;   // n_agents x n_tasks, integer-valued
  Eigen::VectorXd capacity;  // n_agents

  int n_agents() const { return static_cast<int>(profits.rows()); }
  int n_tasks() const { return static_cast<int>(profits.cols()); }

  bool operator==(const GapInstance& other) const {
    return profits == other.profits && weights == other.weights &&
           capacity == other.capacity;
  }
};

/// Throws std::invalid_argument unless dimensions agree, sizes are positive,
/// weights are nonnegative integers and capacities are nonnegative.
void validate(const GapInstance& instance);

/// Binary assignment matrix: x(i, m) == 1 when agent i serves task m.
using Assignment = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

enum class ConstraintKind {
  none,
  task_unassigned,        // column sums to 0
  task_multiply_assigned, // column sums to 2+
  capacity_exceeded,      // agent load over capacity
};

/// Outcome of checking an assignment against an instance. When the
/// assignment is feasible, `value` holds the total profit; otherwise
/// `violation` names the first broken constraint (tasks scanned in index
/// order first, then agent capacities).
struct EvalResult {
  bool feasible = false;
  double value = 0.0;
  ConstraintKind violation = ConstraintKind::none;
  int index = -1;  // offending task or agent

  std::string describe() const;
};

/// Scores `x` against `instance`. Throws std::invalid_argument on dimension
/// mismatch; infeasibility is reported in the result, not thrown.
EvalResult evaluate(const GapInstance& instance, const Assignment& x);

enum class SolveStatus {
  optimal,
  feasible,    // a feasible solution without an optimality certificate
  infeasible,
};

/// Result of a complete solve: status, best assignment found and its value.
struct SolveReport {
  SolveStatus status = SolveStatus::infeasible;
  double cost = 0.0;
  std::optional<Assignment> assignment;
};

}  // namespace gapbp
