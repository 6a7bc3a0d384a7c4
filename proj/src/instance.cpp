#include "gapbp/instance.hpp"

#include <cmath>
#include <stdexcept>

namespace gapbp {

void validate(const GapInstance& instance) {
  const auto rows = instance.profits.rows();
  const auto cols = instance.profits.cols();
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("instance must have at least one agent and one task");
  }
  if (instance.weights.rows() != rows || instance.weights.cols() != cols) {
    throw std::invalid_argument("profit and weight matrices must have equal shape");
  }
  if (instance.capacity.size() != rows) {
    throw std::invalid_argument("capacity vector length must equal the agent count");
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (instance.capacity(i) < 0.0) {
      throw std::invalid_argument("capacities must be nonnegative");
    }
    for (Eigen::Index m = 0; m < cols; ++m) {
      const double w = instance.weights(i, m);
      if (w < 0.0 || w != std::floor(w)) {
        throw std::invalid_argument("weights must be nonnegative integers");
      }
    }
  }
}

std::string EvalResult::describe() const {
  switch (violation) {
    case ConstraintKind::none:
      return "feasible";
    case ConstraintKind::task_unassigned:
      return "task " + std::to_string(index) + " is unassigned";
    case ConstraintKind::task_multiply_assigned:
      return "task " + std::to_string(index) + " is assigned more than once";
    case ConstraintKind::capacity_exceeded:
      return "capacity exceeded at agent " + std::to_string(index);
  }
  return "unknown";
}

EvalResult evaluate(const GapInstance& instance, const Assignment& x) {
  const int n = instance.n_agents();
  const int m = instance.n_tasks();
  if (x.rows() != n || x.cols() != m) {
    throw std::invalid_argument("assignment shape does not match instance");
  }

  EvalResult result;
  for (int task = 0; task < m; ++task) {
    int count = 0;
    for (int agent = 0; agent < n; ++agent) count += x(agent, task);
    if (count != 1) {
      result.violation = count == 0 ? ConstraintKind::task_unassigned
                                    : ConstraintKind::task_multiply_assigned;
      result.index = task;
      return result;
    }
  }
  for (int agent = 0; agent < n; ++agent) {
    double load = 0.0;
    for (int task = 0; task < m; ++task) {
      if (x(agent, task)) load += instance.weights(agent, task);
    }
    if (load > instance.capacity(agent)) {
      result.violation = ConstraintKind::capacity_exceeded;
      result.index = agent;
      return result;
    }
  }

  result.feasible = true;
  for (int agent = 0; agent < n; ++agent) {
    for (int task = 0; task < m; ++task) {
      if (x(agent, task)) result.value += instance.profits(agent, task);
    }
  }
  return result;
}

}  // namespace gapbp
