#include "gapbp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gapbp/network.hpp"
#include "gapbp/rng.hpp"
#include "gapbp/simulator.hpp"

namespace gapbp {

const char* robot_kind_name(RobotKind kind) {
  return kind == RobotKind::aerial ? "aerial" : "ground";
}

RobotKind parse_robot_kind(const std::string& text) {
  if (text == "aerial") return RobotKind::aerial;
  if (text == "ground") return RobotKind::ground;
  throw std::invalid_argument("unknown robot kind: " + text);
}

double robot_kind_speed(RobotKind kind) {
  return kind == RobotKind::aerial ? 1.0 : 0.22;
}

namespace {

void validate_config(const ScenarioConfig& config) {
  if (config.dt <= 0.0) throw std::invalid_argument("dt must be positive");
  if (config.round_period <= 0.0) {
    throw std::invalid_argument("round_period must be positive");
  }
  if (config.total_tasks() > 0 && config.robots.empty()) {
    throw std::invalid_argument("tasks without robots can never be served");
  }
  for (const auto& robot : config.robots) {
    if (robot.capacity < 0.0) {
      throw std::invalid_argument("robot capacity must be nonnegative");
    }
  }
  for (const auto& [robot, task] : config.inaccessible) {
    if (robot < 0 || robot >= static_cast<int>(config.robots.size()) ||
        task < 0 || task >= config.total_tasks()) {
      throw std::invalid_argument("inaccessible pair out of range");
    }
  }
}

Eigen::Vector2d read_point(const nlohmann::json& node) {
  return {node.at("x").get<double>(), node.at("y").get<double>()};
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(std::string("scenario config: ") + err.what());
  }
  ScenarioConfig config;
  config.seed = doc.value("seed", static_cast<uint64_t>(0));
  config.dt = doc.value("dt", config.dt);
  config.round_period = doc.value("round_period", config.round_period);
  config.max_time = doc.value("max_time", config.max_time);
  config.round_cap = doc.value("round_cap", config.round_cap);
  for (const auto& node : doc.value("robots", nlohmann::json::array())) {
    ScenarioConfig::RobotSpec spec;
    spec.kind = parse_robot_kind(node.at("kind").get<std::string>());
    spec.position = read_point(node);
    spec.capacity = node.at("capacity").get<double>();
    config.robots.push_back(spec);
  }
  for (const auto& node : doc.value("tasks", nlohmann::json::array())) {
    config.initial_tasks.push_back({read_point(node)});
  }
  for (const auto& node : doc.value("arrivals", nlohmann::json::array())) {
    config.arrivals.push_back({read_point(node)});
  }
  for (const auto& node : doc.value("inaccessible", nlohmann::json::array())) {
    config.inaccessible.emplace_back(node.at(0).get<int>(), node.at(1).get<int>());
  }
  validate_config(config);
  return config;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario config: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_config(buffer.str());
}

ScenarioConfig random_scenario(int n_robots, int n_initial, int n_arrivals,
                               uint64_t seed) {
  if (n_robots < 1 || n_initial < 0 || n_arrivals < 0) {
    throw std::invalid_argument("random_scenario: bad sizes");
  }
  Rng rng(seed);
  ScenarioConfig config;
  config.seed = seed;
  for (int i = 0; i < n_robots; ++i) {
    ScenarioConfig::RobotSpec spec;
    spec.kind = rng.uniform_int(0, 1) == 0 ? RobotKind::aerial : RobotKind::ground;
    spec.position = {rng.uniform_real(0.0, 10.0), rng.uniform_real(0.0, 10.0)};
    // Loose enough that any robot could hold every open task by itself, so
    // feasibility is only ever limited by the accessibility pattern.
    spec.capacity =
        25.0 * std::max(1, n_initial) + static_cast<double>(rng.uniform_int(0, 25));
    config.robots.push_back(spec);
  }
  for (int m = 0; m < n_initial; ++m) {
    config.initial_tasks.push_back(
        {{rng.uniform_real(0.0, 10.0), rng.uniform_real(0.0, 10.0)}});
  }
  for (int m = 0; m < n_arrivals; ++m) {
    config.arrivals.push_back(
        {{rng.uniform_real(0.0, 10.0), rng.uniform_real(0.0, 10.0)}});
  }
  const int total = config.total_tasks();
  std::vector<std::vector<uint8_t>> blocked(
      n_robots, std::vector<uint8_t>(total, 0));
  for (int i = 0; i < n_robots; ++i) {
    for (int m = 0; m < total; ++m) {
      blocked[i][m] = rng.uniform_real(0.0, 1.0) < 0.25 ? 1 : 0;
    }
  }
  for (int m = 0; m < total; ++m) {
    bool reachable = false;
    for (int i = 0; i < n_robots; ++i) reachable = reachable || !blocked[i][m];
    if (!reachable) {
      blocked[static_cast<int>(rng.uniform_int(0, n_robots - 1))][m] = 0;
    }
  }
  for (int i = 0; i < n_robots; ++i) {
    for (int m = 0; m < total; ++m) {
      if (blocked[i][m]) config.inaccessible.emplace_back(i, m);
    }
  }
  validate_config(config);
  return config;
}

GapInstance build_gap(const std::vector<Robot>& robots,
                      const std::vector<const ServiceTask*>& open_tasks,
                      const Eigen::MatrixXd& frozen_weights) {
  const int n = static_cast<int>(robots.size());
  const int m = static_cast<int>(open_tasks.size());
  GapInstance instance;
  instance.profits.resize(n, m);
  instance.weights.resize(n, m);
  instance.capacity.resize(n);
  for (int i = 0; i < n; ++i) {
    instance.capacity(i) = robots[i].capacity;
    for (int j = 0; j < m; ++j) {
      const ServiceTask& task = *open_tasks[j];
      const double distance = (task.position - robots[i].position).norm();
      instance.profits(i, j) = -distance / robots[i].max_speed;
      instance.weights(i, j) = task.accessible[i]
                                   ? frozen_weights(i, task.id)
                                   : std::floor(robots[i].capacity) + 1.0;
    }
  }
  return instance;
}

ShppResult shpp_order(const Robot& robot, const std::vector<int>& task_ids,
                      const std::vector<ServiceTask>& tasks) {
  if (static_cast<int>(task_ids.size()) > kShppGuard) {
    throw std::invalid_argument("route search limited to " +
                                std::to_string(kShppGuard) + " tasks");
  }
  ShppResult best;
  if (task_ids.empty()) return best;
  std::vector<int> order = task_ids;
  std::sort(order.begin(), order.end());
  bool first = true;
  do {
    double length = 0.0;
    Eigen::Vector2d at = robot.position;
    for (int id : order) {
      length += (tasks[id].position - at).norm();
      at = tasks[id].position;
    }
    if (first || length < best.length) {
      best.order = order;
      best.length = length;
      first = false;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

namespace {

void format_record(std::ostream& out, double time, const std::string& entity,
                   const std::string& kind, double x, double y) {
  char line[160];
  std::snprintf(line, sizeof(line), "%.3f, %s, %s, %.6g, %.6g", time,
                entity.c_str(), kind.c_str(), x, y);
  out << line << '\n';
}

}  // namespace

void write_event_log(const ScenarioEventLog& log, std::ostream& out) {
  for (const auto& event : log.events) {
    format_record(out, event.time, event.entity, event.kind, event.x, event.y);
  }
  for (const auto& sample : log.trajectory) {
    format_record(out, sample.time, "robot:" + std::to_string(sample.robot),
                  "trajectory", sample.x, sample.y);
  }
}

namespace {

/// Mutable state of one dynamic run; `simulate` advances it on a fixed grid.
struct Simulation {
  const ScenarioConfig& config;
  std::vector<Robot> robots;
  std::vector<ServiceTask> tasks;
  std::vector<uint8_t> revealed;
  Eigen::MatrixXd frozen_weights;
  ScenarioEventLog log;

  long long step = 0;
  int next_arrival = 0;
  int done_count = 0;
  std::vector<int> serving;            // task id per robot, -1 when traveling
  std::vector<double> hold_remaining;  // seconds, per robot
  std::vector<int> service_index;      // log.services slot per task

  struct PendingAllocation {
    bool active = false;
    long long finish_step = 0;
    std::size_t record = 0;       // index into log.reopts
    Assignment assignment;
    std::vector<int> column_tasks;
  };
  PendingAllocation pending;
  bool solver_overran = false;

  explicit Simulation(const ScenarioConfig& cfg) : config(cfg) {
    const int n = static_cast<int>(cfg.robots.size());
    const int total = cfg.total_tasks();
    Rng rng(cfg.seed);
    frozen_weights.resize(n, total);
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m < total; ++m) {
        frozen_weights(i, m) = static_cast<double>(rng.uniform_int(10, 25));
      }
    }
    std::vector<double> holds(total);
    for (int m = 0; m < total; ++m) holds[m] = rng.uniform_real(3.0, 5.0);

    robots.reserve(n);
    for (int i = 0; i < n; ++i) {
      Robot robot;
      robot.id = i;
      robot.kind = cfg.robots[i].kind;
      robot.position = cfg.robots[i].position;
      robot.max_speed = robot_kind_speed(robot.kind);
      robot.capacity = cfg.robots[i].capacity;
      robots.push_back(robot);
    }
    tasks.reserve(total);
    for (int m = 0; m < total; ++m) {
      ServiceTask task;
      task.id = m;
      task.position = m < static_cast<int>(cfg.initial_tasks.size())
                          ? cfg.initial_tasks[m].position
                          : cfg.arrivals[m - cfg.initial_tasks.size()].position;
      task.hold_time = holds[m];
      task.accessible.assign(n, 1);
      tasks.push_back(task);
    }
    for (const auto& [robot, task] : cfg.inaccessible) {
      tasks[task].accessible[robot] = 0;
    }
    revealed.assign(total, 0);
    serving.assign(n, -1);
    hold_remaining.assign(n, 0.0);
    service_index.assign(total, -1);
  }

  double time_at(long long s) const { return static_cast<double>(s) * config.dt; }

  void emit(double time, std::string entity, std::string kind, double x, double y) {
    log.events.push_back({time, std::move(entity), std::move(kind), x, y});
  }

  int open_count() const {
    int count = 0;
    for (const auto& task : tasks) {
      if (revealed[task.id] && task.state != TaskState::done) ++count;
    }
    return count;
  }

  std::vector<const ServiceTask*> open_tasks() const {
    std::vector<const ServiceTask*> open;
    for (const auto& task : tasks) {
      if (revealed[task.id] && task.state != TaskState::done) {
        open.push_back(&task);
      }
    }
    return open;
  }

  void reveal_task(int id, double now) {
    revealed[id] = 1;
    tasks[id].state = TaskState::pending;
    emit(now, "task:" + std::to_string(id), "task-appeared", tasks[id].position.x(),
         tasks[id].position.y());
  }

  /// Launches a re-optimization over the current open set. The incumbent is
  /// computed here, but robots only adopt it after the solve's communication
  /// rounds have elapsed in simulated time — unless a newer reveal aborts it.
  void start_reopt(long long now_step) {
    const auto open = open_tasks();
    if (open.empty()) return;
    const double now = time_at(now_step);
    emit(now, "solver", "reoptimization-started", 0.0, 0.0);

    GapInstance instance = build_gap(robots, open, frozen_weights);
    RunOptions options;
    options.mode = SolveMode::first_incumbent;
    options.round_cap = config.round_cap;
    RunResult run;
    try {
      run = run_cloud_assisted(
          instance,
          NetworkSchedule(ScheduleKind::cycle_static, instance.n_agents()),
          options);
    } catch (const RoundCapExceeded&) {
      solver_overran = true;
      return;
    }

    ReoptRecord record;
    record.start_time = now;
    record.open_tasks = static_cast<int>(open.size());
    record.communication_rounds = run.metrics.communication_rounds;
    record.feasible = run.assignment.has_value() &&
                      evaluate(instance, *run.assignment).feasible;
    log.reopts.push_back(record);
    if (!record.feasible) return;

    pending.active = true;
    pending.record = log.reopts.size() - 1;
    pending.assignment = *run.assignment;
    pending.column_tasks.clear();
    for (const auto* task : open) pending.column_tasks.push_back(task->id);
    const double duration =
        static_cast<double>(run.metrics.communication_rounds) * config.round_period;
    pending.finish_step =
        now_step + std::max<long long>(
                       1, static_cast<long long>(
                              std::ceil(duration / config.dt - 1e-12)));
  }

  void abort_reopt(double now) {
    pending.active = false;
    emit(now, "solver", "reoptimization-aborted", 0.0, 0.0);
  }

  /// Adopts the finished allocation: every open task that is not mid-service
  /// moves to the robot the solver picked, and each robot's visiting order is
  /// recomputed as the shortest open path from where it stands right now.
  void apply_allocation(double now) {
    pending.active = false;
    log.reopts[pending.record].applied = true;
    for (int i = 0; i < static_cast<int>(robots.size()); ++i) {
      std::vector<int> mine;
      for (std::size_t j = 0; j < pending.column_tasks.size(); ++j) {
        const int id = pending.column_tasks[j];
        if (pending.assignment(i, static_cast<int>(j)) != 1) continue;
        if (tasks[id].state == TaskState::done ||
            tasks[id].state == TaskState::in_service) {
          continue;  // finished or already being held by its current server
        }
        tasks[id].state = TaskState::assigned;
        mine.push_back(id);
      }
      robots[i].route = shpp_order(robots[i], mine, tasks).order;
    }
    emit(now, "solver", "reoptimization-finished", 0.0, 0.0);
  }

  /// Service countdown; completions mark tasks done and pull the next queued
  /// arrival into the open set. Returns true when anything was revealed.
  bool advance_service(double now) {
    bool revealed_any = false;
    for (int i = 0; i < static_cast<int>(robots.size()); ++i) {
      if (serving[i] < 0) continue;
      hold_remaining[i] -= config.dt;
      if (hold_remaining[i] > 1e-12) continue;
      const int id = serving[i];
      const int before = open_count();
      tasks[id].state = TaskState::done;
      ++done_count;
      serving[i] = -1;
      log.services[service_index[id]].finish_time = now;
      emit(now, "task:" + std::to_string(id), "task-completed",
           tasks[id].position.x(), tasks[id].position.y());
      if (next_arrival < static_cast<int>(config.arrivals.size())) {
        const int new_id =
            static_cast<int>(config.initial_tasks.size()) + next_arrival;
        ++next_arrival;
        reveal_task(new_id, now);
        log.reveals.push_back({now, new_id, before, open_count()});
        revealed_any = true;
      }
    }
    return revealed_any;
  }

  void advance_motion(double now) {
    for (int i = 0; i < static_cast<int>(robots.size()); ++i) {
      Robot& robot = robots[i];
      if (serving[i] >= 0 || robot.route.empty()) continue;
      const int target = robot.route.front();
      const Eigen::Vector2d to = tasks[target].position - robot.position;
      const double distance = to.norm();
      const double reach = robot.max_speed * config.dt;
      if (distance > reach + 1e-12) {
        robot.position += to * (reach / distance);
        continue;
      }
      robot.position = tasks[target].position;
      robot.route.erase(robot.route.begin());
      if (tasks[target].state != TaskState::assigned) continue;
      tasks[target].state = TaskState::in_service;
      serving[i] = target;
      hold_remaining[i] = tasks[target].hold_time;
      service_index[target] = static_cast<int>(log.services.size());
      log.services.push_back({target, i, now, 0.0});
      emit(now, "task:" + std::to_string(target), "task-started",
           tasks[target].position.x(), tasks[target].position.y());
    }
  }

  void sample_trajectories(double now) {
    for (const auto& robot : robots) {
      log.trajectory.push_back(
          {now, robot.id, robot.position.x(), robot.position.y()});
    }
  }

  ScenarioEventLog run() {
    const int total = config.total_tasks();
    for (int m = 0; m < static_cast<int>(config.initial_tasks.size()); ++m) {
      reveal_task(m, 0.0);
    }
    if (total > 0) {
      sample_trajectories(0.0);
      start_reopt(0);
    }
    const long long sample_every =
        std::max<long long>(1, std::llround(0.5 / config.dt));

    while (done_count < total && !solver_overran) {
      if (time_at(step) > config.max_time) break;
      if (pending.active && step >= pending.finish_step) {
        apply_allocation(time_at(step));
      }
      const double now = time_at(step + 1);
      const bool revealed_any = advance_service(now);
      advance_motion(now);
      if (revealed_any) {
        if (pending.active) abort_reopt(now);
        start_reopt(step + 1);
      }
      ++step;
      if (step % sample_every == 0) sample_trajectories(time_at(step));
    }

    log.end_time = time_at(step);
    log.completed = done_count == total;
    if (step % sample_every != 0 && total > 0) sample_trajectories(log.end_time);
    return std::move(log);
  }
};

}  // namespace

ScenarioEventLog simulate(const ScenarioConfig& config) {
  validate_config(config);
  Simulation simulation(config);
  return simulation.run();
}

}  // namespace gapbp
