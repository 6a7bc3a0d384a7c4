#include "gapbp/network.hpp"

#include <stdexcept>

namespace gapbp {

ScheduleKind parse_schedule_kind(const std::string& text) {
  if (text == "cycle") return ScheduleKind::cycle_static;
  if (text == "complete") return ScheduleKind::complete_static;
  if (text == "periodic-edge") return ScheduleKind::periodic_single_edge;
  throw std::invalid_argument("unknown graph '" + text +
                              "' (expected cycle, complete or periodic-edge)");
}

std::string schedule_kind_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::cycle_static: return "cycle";
    case ScheduleKind::complete_static: return "complete";
    case ScheduleKind::periodic_single_edge: return "periodic-edge";
    case ScheduleKind::edgeless: return "edgeless";
  }
  return "?";
}

NetworkSchedule::NetworkSchedule(ScheduleKind kind, int n_agents)
    : kind_(kind), n_agents_(n_agents) {
  if (n_agents < 1) throw std::invalid_argument("schedule needs at least one agent");
}

int NetworkSchedule::window() const {
  switch (kind_) {
    case ScheduleKind::cycle_static:
    case ScheduleKind::complete_static:
      return 1;
    case ScheduleKind::periodic_single_edge:
      return n_agents_;
    case ScheduleKind::edgeless:
      return 1;
  }
  return 1;
}

std::vector<std::pair<int, int>> NetworkSchedule::edges(long long round) const {
  std::vector<std::pair<int, int>> out;
  if (n_agents_ == 1) return out;  // a lone agent talks to nobody
  switch (kind_) {
    case ScheduleKind::cycle_static:
      for (int i = 0; i < n_agents_; ++i) out.emplace_back(i, (i + 1) % n_agents_);
      break;
    case ScheduleKind::complete_static:
      for (int i = 0; i < n_agents_; ++i) {
        for (int j = 0; j < n_agents_; ++j) {
          if (i != j) out.emplace_back(i, j);
        }
      }
      break;
    case ScheduleKind::periodic_single_edge: {
      const int from = static_cast<int>(round % n_agents_);
      out.emplace_back(from, (from + 1) % n_agents_);
      break;
    }
    case ScheduleKind::edgeless:
      break;
  }
  return out;
}

namespace {

bool reaches_all(const std::vector<std::vector<int>>& adjacency, int start) {
  std::vector<char> seen(adjacency.size(), 0);
  std::vector<int> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const int node = queue.back();
    queue.pop_back();
    for (const int next : adjacency[node]) {
      if (!seen[next]) {
        seen[next] = 1;
        queue.push_back(next);
      }
    }
  }
  for (const char flag : seen) {
    if (!flag) return false;
  }
  return true;
}

}  // namespace

bool check_schedule(const NetworkSchedule& schedule, int window) {
  if (window < 1) return false;
  const int n = schedule.n_agents();
  if (n == 1) return true;

  // The schedules are periodic, so checking windows anchored at every round
  // of one period covers all spans.
  long long period = 1;
  if (schedule.kind() == ScheduleKind::periodic_single_edge) period = n;

  for (long long start = 0; start < period; ++start) {
    std::vector<std::vector<int>> forward(n), backward(n);
    for (long long t = start; t < start + window; ++t) {
      for (const auto& [from, to] : schedule.edges(t)) {
        forward[from].push_back(to);
        backward[to].push_back(from);
      }
    }
    if (!reaches_all(forward, 0) || !reaches_all(backward, 0)) return false;
  }
  return true;
}

}  // namespace gapbp
