#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gapbp {

/// Communication patterns over simulated rounds. All are periodic.
///   cycle_static:        directed ring i -> i+1 (mod n), every round.
///   complete_static:     every ordered pair, every round.
///   periodic_single_edge: round t activates only the ring edge leaving
///                        agent (t mod n); connectivity needs an n-round window.
///   edgeless:            no communication at all (never valid; for tests).
enum class ScheduleKind { cycle_static, complete_static, periodic_single_edge, edgeless };

ScheduleKind parse_schedule_kind(const std::string& text);
std::string schedule_kind_name(ScheduleKind kind);

class NetworkSchedule {
 public:
  NetworkSchedule(ScheduleKind kind, int n_agents);

  int n_agents() const { return n_agents_; }
  ScheduleKind kind() const { return kind_; }

  /// Smallest window over which this schedule claims joint strong
  /// connectivity (1 for the static graphs, n for the single-edge rotation).
  int window() const;

  /// Directed edges (from, to) active in round t.
  std::vector<std::pair<int, int>> edges(long long round) const;

 private:
  ScheduleKind kind_;
  int n_agents_;
};

/// Verifies that the union of edge sets over every `window`-round span is
/// strongly connected (spans starting anywhere in one full period).
bool check_schedule(const NetworkSchedule& schedule, int window);

}  // namespace gapbp
