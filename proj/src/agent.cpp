#include "gapbp/agent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gapbp/tolerances.hpp"

namespace gapbp {
namespace {

bool is_integral(const Eigen::MatrixXd& z) {
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index m = 0; m < z.cols(); ++m) {
      if (std::abs(z(i, m) - std::round(z(i, m))) > kIntegralityTol) return false;
    }
  }
  return true;
}

Assignment round_assignment(const Eigen::MatrixXd& z) {
  Assignment x(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index m = 0; m < z.cols(); ++m) {
      x(i, m) = static_cast<int>(std::lround(z(i, m)));
    }
  }
  return x;
}

bool vertex_respects(const Column& column, const FixingSet& fixings) {
  for (const auto& [task, value] : fixings.entries()) {
    if ((column.vertex[task] != 0) != value) return false;
  }
  return true;
}

}  // namespace

bool detect_convergence(int unchanged_rounds, int n_agents, int window) {
  return unchanged_rounds >= 2 * n_agents * window + 1;
}

Agent::Agent(AgentConfig config)
    : config_(std::move(config)),
      incumbent_cost_(-std::numeric_limits<double>::infinity()) {
  if (config_.id < 0 || config_.id >= config_.n_agents) {
    throw std::invalid_argument("agent id out of range");
  }
  if (config_.profit_row.size() != config_.n_tasks ||
      config_.weight_row.size() != config_.n_tasks) {
    throw std::invalid_argument("agent row data does not match the task count");
  }
  if (config_.window < 1) {
    throw std::invalid_argument("connectivity window must be positive");
  }
  basis_ = big_m_basis(config_.n_agents, config_.n_tasks, config_.big_m);
  basis_canonical_ = basis_.canonical();
  if (config_.manages_tree) {
    tree_.emplace(config_.n_agents);
    current_node_ = tree_->extract();  // root: the unconstrained problem
    fixings_ = current_node_->fixings[config_.id];
  }
}

int Agent::convergence_threshold() const {
  return 2 * config_.n_agents * config_.window + 1;
}

int Agent::tree_high_water() const {
  return tree_.has_value() ? tree_->high_water() : 0;
}

Message Agent::outbound() const {
  return Message{config_.id, label_, basis_};
}

void Agent::step(const std::vector<Message>& inbox) {
  if (halted_) throw std::logic_error("step on a halted agent");

  if (config_.manages_tree) {
    // A neighbour already working further down the search is proof that the
    // current subproblem reached agreement: fast-forward one node per round.
    for (const auto& message : inbox) {
      if (message.label > label_) {
        advance_node();
        return;
      }
    }
  }
  run_column_generation(inbox);
}

void Agent::run_column_generation(const std::vector<Message>& inbox) {
  std::vector<Column> candidates;
  for (const auto& column : basis_.columns()) {
    if (!column.artificial) candidates.push_back(column);
  }
  for (const auto& column : seed_columns_) candidates.push_back(column);
  seed_columns_.clear();
  for (const auto& message : inbox) {
    if (message.label != label_) continue;  // stale or foreign subproblem
    for (const auto& column : message.basis.columns()) {
      if (!column.artificial) candidates.push_back(column);
    }
  }

  LpSolution solution = solve_rmp(candidates, config_.n_agents, config_.n_tasks,
                                  config_.big_m, &basis_);

  const Eigen::VectorXd pricing_values =
      config_.profit_row - solution.task_duals;
  const auto priced =
      solve_pricing(pricing_values, config_.weight_row, config_.capacity, fixings_);

  Basis next = solution.basis;
  if (priced.has_value()) {
    const double reduced_cost =
        priced->value - solution.convexity_duals(config_.id);
    double profit = 0.0;
    for (int m = 0; m < config_.n_tasks; ++m) {
      if (priced->vertex[m]) profit += config_.profit_row(m);
    }
    const Column column = make_agent_column(config_.id, priced->vertex, profit);
    next = pivot(next, column, reduced_cost, config_.n_agents, config_.n_tasks,
                 config_.big_m);
  }

  std::string canonical = next.canonical();
  if (canonical == basis_canonical_) {
    ++unchanged_rounds_;
  } else {
    unchanged_rounds_ = 0;
  }
  basis_ = std::move(next);
  basis_canonical_ = std::move(canonical);
  last_event_ = "refine";

  if (detect_convergence(unchanged_rounds_, config_.n_agents, config_.window)) {
    if (config_.manages_tree) {
      advance_node();
    } else if (!upload_ready_) {
      upload_ready_ = true;
      last_event_ = "converged";
    }
  }
}

void Agent::advance_node() {
  ++label_;

  const Extraction extraction =
      extract_solution(basis_, config_.n_agents, config_.n_tasks);
  const bool integral = is_integral(extraction.z);
  const NodeAction action = consider(extraction.cost, integral,
                                     extraction.contains_artificial,
                                     incumbent_cost_);
  switch (action) {
    case NodeAction::update_incumbent:
      incumbent_cost_ = extraction.integral_cost;
      incumbent_ = round_assignment(extraction.z);
      last_event_ = "incumbent";
      if (config_.mode == SolveMode::first_incumbent) {
        halted_ = true;
        last_event_ = "halt";
        return;
      }
      break;
    case NodeAction::branch:
      tree_->branch(*current_node_, extraction.z);
      last_event_ = "branch";
      break;
    case NodeAction::prune:
      last_event_ = "prune";
      break;
  }

  if (tree_->empty()) {
    halted_ = true;
    last_event_ = "halt";
    return;
  }
  current_node_ = tree_->extract();
  load_node_fixings(current_node_->fixings[config_.id]);
}

void Agent::load_node_fixings(const FixingSet& fixings) {
  fixings_ = fixings;
  seed_columns_.clear();
  for (const auto& column : basis_.columns()) {
    if (column.artificial || column.owner != config_.id) continue;
    if (vertex_respects(column, fixings_)) seed_columns_.push_back(column);
  }
  basis_ = big_m_basis(config_.n_agents, config_.n_tasks, config_.big_m);
  basis_canonical_ = basis_.canonical();
  unchanged_rounds_ = 0;
  upload_ready_ = false;
}

void Agent::mark_uploaded() { upload_ready_ = false; }

void Agent::apply_node_update(int new_label, const FixingSet& fixings) {
  if (config_.manages_tree) {
    throw std::logic_error("node updates are for coordinator-driven agents");
  }
  label_ = new_label;
  load_node_fixings(fixings);
  last_event_ = "node-update";
}

void Agent::halt_with(double cost, const std::optional<Assignment>& assignment) {
  incumbent_cost_ = cost;
  incumbent_ = assignment;
  halted_ = true;
  last_event_ = "halt";
}

}  // namespace gapbp
