#include "gapbp/oracle.hpp"

#include <stdexcept>
#include <vector>

namespace gapbp {
namespace {

struct Search {
  const GapInstance& instance;
  std::vector<int> choice;        // task -> agent for the current branch
  std::vector<double> remaining;  // per-agent remaining capacity
  double value = 0.0;

  bool found = false;
  double best_value = 0.0;
  std::vector<int> best_choice;

  explicit Search(const GapInstance& inst)
      : instance(inst),
        choice(inst.n_tasks(), -1),
        remaining(inst.capacity.data(), inst.capacity.data() + inst.n_agents()) {}

  void run(int task) {
    if (task == instance.n_tasks()) {
      if (!found || value > best_value) {
        found = true;
        best_value = value;
        best_choice = choice;
      }
      return;
    }
    for (int agent = 0; agent < instance.n_agents(); ++agent) {
      const double w = instance.weights(agent, task);
      if (w > remaining[agent]) continue;
      remaining[agent] -= w;
      value += instance.profits(agent, task);
      choice[task] = agent;
      run(task + 1);
      choice[task] = -1;
      value -= instance.profits(agent, task);
      remaining[agent] += w;
    }
  }
};

}  // namespace

SolveReport oracle_solve(const GapInstance& instance) {
  validate(instance);
  if (instance.n_agents() * instance.n_tasks() > kOracleSizeLimit) {
    throw std::invalid_argument("instance too large for the exhaustive oracle");
  }

  Search search(instance);
  search.run(0);

  SolveReport report;
  if (!search.found) {
    report.status = SolveStatus::infeasible;
    return report;
  }
  report.status = SolveStatus::optimal;
  report.cost = search.best_value;
  Assignment x = Assignment::Zero(instance.n_agents(), instance.n_tasks());
  for (int task = 0; task < instance.n_tasks(); ++task) {
    x(search.best_choice[task], task) = 1;
  }
  report.assignment = x;
  return report;
}

}  // namespace gapbp
