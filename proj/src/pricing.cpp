#include "gapbp/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace gapbp {

void FixingSet::fix(int task, bool value) {
  const auto [it, inserted] = fixed_.emplace(task, value);
  if (!inserted && it->second != value) {
    throw std::logic_error("conflicting fixing for task " + std::to_string(task));
  }
}

std::optional<bool> FixingSet::lookup(int task) const {
  const auto it = fixed_.find(task);
  if (it == fixed_.end()) return std::nullopt;
  return it->second;
}

std::string FixingSet::describe() const {
  std::string out;
  for (const auto& [task, value] : fixed_) {
    if (!out.empty()) out += ',';
    out += std::to_string(task);
    out += value ? "=1" : "=0";
  }
  return out;
}

std::optional<PricedVertex> solve_pricing(const Eigen::VectorXd& values,
                                          const Eigen::VectorXd& weights,
                                          double capacity,
                                          const FixingSet& fixings) {
  const int n_tasks = static_cast<int>(values.size());
  if (weights.size() != n_tasks) {
    throw std::invalid_argument("pricing value/weight length mismatch");
  }
  if (capacity < 0.0) {
    throw std::invalid_argument("pricing capacity must be nonnegative");
  }

  // Integer loads make "load <= capacity" equivalent to "load <= floor(capacity)".
  long long budget = static_cast<long long>(std::floor(capacity));
  double base_value = 0.0;
  std::vector<int> free_tasks;
  free_tasks.reserve(n_tasks);
  for (int m = 0; m < n_tasks; ++m) {
    const double w = weights(m);
    if (w < 0.0 || w != std::floor(w)) {
      throw std::invalid_argument("pricing weights must be nonnegative integers");
    }
    const auto forced = fixings.lookup(m);
    if (!forced.has_value()) {
      free_tasks.push_back(m);
    } else if (*forced) {
      budget -= static_cast<long long>(w);
      base_value += values(m);
    }
  }
  if (budget < 0) return std::nullopt;  // fixed-on load alone breaks capacity

  // best[k][c]: best value over free tasks k.. with c capacity left. The
  // suffix direction lets reconstruction walk tasks in index order and
  // prefer leaving each one out, which yields the lexicographically
  // smallest optimal bundle; ties compare exactly because both branches
  // reuse the identical suffix sums.
  const int f = static_cast<int>(free_tasks.size());
  const int cap = static_cast<int>(budget);
  std::vector<std::vector<double>> best(f + 1, std::vector<double>(cap + 1, 0.0));
  for (int k = f - 1; k >= 0; --k) {
    const int task = free_tasks[k];
    const int w = static_cast<int>(weights(task));
    const double v = values(task);
    for (int c = 0; c <= cap; ++c) {
      double candidate = best[k + 1][c];
      if (w <= c) candidate = std::max(candidate, v + best[k + 1][c - w]);
      best[k][c] = candidate;
    }
  }

  PricedVertex result;
  result.vertex.assign(n_tasks, 0);
  for (int m = 0; m < n_tasks; ++m) {
    const auto forced = fixings.lookup(m);
    if (forced.has_value() && *forced) result.vertex[m] = 1;
  }
  int c = cap;
  for (int k = 0; k < f; ++k) {
    if (best[k][c] == best[k + 1][c]) continue;  // skipping keeps the optimum
    const int task = free_tasks[k];
    result.vertex[task] = 1;
    c -= static_cast<int>(weights(task));
  }
  result.value = base_value + best[0][cap];
  return result;
}

}  // namespace gapbp
