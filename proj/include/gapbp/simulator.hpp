#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gapbp/agent.hpp"
#include "gapbp/instance.hpp"
#include "gapbp/network.hpp"

namespace gapbp {

/// Raised when a run burns through its round budget without halting.
struct RoundCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunMetrics {
  long long communication_rounds = 0;
  /// Largest number of open subproblems any agent ever stored.
  int max_stored_nodes = 0;
  double incumbent_cost = 0.0;  // NaN when no feasible solution was found
  double relative_error_pct = 0.0;  // filled in by campaign drivers; NaN here
};

struct RunResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<Assignment> assignment;
  RunMetrics metrics;
  /// Tree high-water mark at the coordinator (cloud-assisted runs only).
  int coordinator_stored_nodes = 0;
  /// Longest stretch of rounds spent on a single subproblem.
  long long max_rounds_per_node = 0;
};

struct RunOptions {
  SolveMode mode = SolveMode::exact;
  long long round_cap = 1'000'000;
  std::uint64_t seed = 0;  // recorded for reproducibility; the engine is deterministic
  /// Optional per-round trace: "round,agent,label,basis_hash,unchanged,event".
  std::ostream* trace = nullptr;
  /// Optional observer invoked after each round's synchronous step.
  std::function<void(long long round, const std::vector<Agent>&)> on_round;
};

/// Peer-to-peer run: every agent owns a replica of the search tree and the
/// network is the only coupling. Deterministic given (instance, schedule,
/// options); halts with all agents agreeing on the incumbent.
RunResult run_distributed(const GapInstance& instance,
                          const NetworkSchedule& schedule,
                          const RunOptions& options = {});

/// Cloud-assisted run: agents only generate columns and detect convergence;
/// a coordinator keeps the single search tree, decides branching and
/// broadcasts each next subproblem. Agents store no tree nodes at all.
RunResult run_cloud_assisted(const GapInstance& instance,
                             const NetworkSchedule& schedule,
                             const RunOptions& options = {});

}  // namespace gapbp
