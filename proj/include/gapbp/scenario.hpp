#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gapbp/instance.hpp"

namespace gapbp {

/// Robots either fly (1 m/s) or drive (0.22 m/s).
enum class RobotKind { aerial, ground };

const char* robot_kind_name(RobotKind kind);
RobotKind parse_robot_kind(const std::string& text);
double robot_kind_speed(RobotKind kind);

struct Robot {
  int id = 0;
  RobotKind kind = RobotKind::aerial;
  Eigen::Vector2d position{0.0, 0.0};
  double max_speed = 1.0;
  double capacity = 0.0;
  std::vector<int> route;  // task ids, visited front to back
};

enum class TaskState { pending, assigned, in_service, done };

struct ServiceTask {
  int id = 0;
  Eigen::Vector2d position{0.0, 0.0};
  double hold_time = 0.0;  // seconds of stand-still service, in [3, 5]
  std::vector<uint8_t> accessible;  // flag per robot
  TaskState state = TaskState::pending;
};

/// Full description of a dynamic run: the fleet, the tasks revealed at time
/// zero, and the queue of tasks revealed one-by-one as earlier ones finish.
struct ScenarioConfig {
  uint64_t seed = 0;
  double dt = 0.05;             // simulation step, seconds
  double round_period = 0.005;  // simulated seconds per communication round
  double max_time = 100000.0;   // safety limit on simulated seconds
  long long round_cap = 1'000'000;
  struct RobotSpec {
    RobotKind kind = RobotKind::aerial;
    Eigen::Vector2d position{0.0, 0.0};
    double capacity = 0.0;
  };
  struct TaskSpec {
    Eigen::Vector2d position{0.0, 0.0};
  };
  std::vector<RobotSpec> robots;
  std::vector<TaskSpec> initial_tasks;
  std::vector<TaskSpec> arrivals;
  // Robot/task pairs the robot cannot serve; task ids index initial tasks
  // first, then arrivals in queue order.
  std::vector<std::pair<int, int>> inaccessible;

  int total_tasks() const {
    return static_cast<int>(initial_tasks.size() + arrivals.size());
  }
};

ScenarioConfig parse_scenario_config(const std::string& json_text);
ScenarioConfig load_scenario_config(const std::string& path);

/// Draws a fleet and task layout on a 10 m x 10 m field with roughly a
/// quarter of the robot/task pairs marked inaccessible (every task keeps at
/// least one capable robot) and capacities loose enough that any reachable
/// assignment fits.
ScenarioConfig random_scenario(int n_robots, int n_initial, int n_arrivals,
                               uint64_t seed);

struct ScenarioEvent {
  double time = 0.0;
  std::string entity;  // "robot:2", "task:5", or "solver"
  std::string kind;    // task-appeared, task-started, task-completed,
                       // reoptimization-started/-aborted/-finished
  double x = 0.0;
  double y = 0.0;
};

struct TrajectorySample {
  double time = 0.0;
  int robot = 0;
  double x = 0.0;
  double y = 0.0;
};

struct ReoptRecord {
  double start_time = 0.0;
  int open_tasks = 0;
  bool feasible = false;
  bool applied = false;  // false when aborted by a newer reveal
  long long communication_rounds = 0;
};

struct RevealRecord {
  double time = 0.0;
  int task = 0;
  int open_before_completion = 0;
  int open_after_reveal = 0;
};

struct ServiceRecord {
  int task = 0;
  int robot = 0;
  double start_time = 0.0;
  double finish_time = 0.0;
};

struct ScenarioEventLog {
  std::vector<ScenarioEvent> events;
  std::vector<TrajectorySample> trajectory;
  std::vector<ReoptRecord> reopts;
  std::vector<RevealRecord> reveals;
  std::vector<ServiceRecord> services;
  bool completed = false;  // false when the time or round limit cut the run short
  double end_time = 0.0;
};

void write_event_log(const ScenarioEventLog& log, std::ostream& out);

/// Travel-time assignment problem over the currently open tasks: profits are
/// negated straight-line travel times from each robot's position, weights are
/// the frozen per-scenario draws except that unreachable pairs get a weight
/// just over the robot's capacity.
GapInstance build_gap(const std::vector<Robot>& robots,
                      const std::vector<const ServiceTask*>& open_tasks,
                      const Eigen::MatrixXd& frozen_weights);

struct ShppResult {
  std::vector<int> order;  // task ids
  double length = 0.0;
};

inline constexpr int kShppGuard = 10;

/// Exhaustive shortest open path from the robot through all its tasks.
ShppResult shpp_order(const Robot& robot, const std::vector<int>& task_ids,
                      const std::vector<ServiceTask>& tasks);

ScenarioEventLog simulate(const ScenarioConfig& config);

}  // namespace gapbp
