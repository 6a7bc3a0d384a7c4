#pragma once

#include "gapbp/instance.hpp"

namespace gapbp {

/// Largest n_agents * n_tasks product accepted by oracle_solve.
inline constexpr int kOracleSizeLimit = 24;

/// Exhaustive reference solver: walks every task-to-agent mapping depth
/// first (tasks in index order, agents in index order), pruning branches
/// that already exceed a capacity. Deterministic: among equal-value optima
/// it returns the first one in that enumeration order.
///
/// Intended for verifying other solvers on small instances only; throws
/// std::invalid_argument when n_agents * n_tasks exceeds kOracleSizeLimit.
SolveReport oracle_solve(const GapInstance& instance);

}  // namespace gapbp
