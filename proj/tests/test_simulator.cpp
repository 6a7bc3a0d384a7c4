#include <doctest.h>

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gapbp/generators.hpp"
#include "gapbp/oracle.hpp"
#include "gapbp/simulator.hpp"

using namespace gapbp;

namespace {

GapInstance toy_2x2() {
  GapInstance instance;
  instance.profits.resize(2, 2);
  instance.profits << 10, 1, 1, 10;
  instance.weights = Eigen::MatrixXd::Ones(2, 2);
  instance.capacity = Eigen::VectorXd::Ones(2);
  return instance;
}

bool trace_line_well_formed(const std::string& line) {
  // round,agent,label,basis_hash,unchanged,event
  std::istringstream in(line);
  std::string field;
  int count = 0;
  bool ok = true;
  while (std::getline(in, field, ',')) {
    ++count;
    if (field.empty()) ok = false;
    if (count <= 3 || count == 5) {
      for (const char c : field) {
        if (!std::isdigit(static_cast<unsigned char>(c))) ok = false;
      }
    }
    if (count == 4) {
      if (field.size() != 16) ok = false;
      for (const char c : field) {
        if (!std::isxdigit(static_cast<unsigned char>(c))) ok = false;
      }
    }
  }
  return ok && count == 6;
}

}  // namespace

TEST_CASE("peer-to-peer runs land exactly on the reference optimum") {
  int checked = 0;
  for (Model model : {Model::A, Model::B, Model::C, Model::D}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const GapInstance instance = generate(model, 2, 4, seed);
      const SolveReport reference = oracle_solve(instance);
      const NetworkSchedule ring(ScheduleKind::cycle_static, 2);
      const RunResult run = run_distributed(instance, ring);
      CAPTURE(model_letter(model));
      CAPTURE(seed);
      if (reference.status == SolveStatus::optimal) {
        REQUIRE(run.status == SolveStatus::optimal);
        CHECK(run.metrics.incumbent_cost == reference.cost);  // integer data
        REQUIRE(run.assignment.has_value());
        const EvalResult check = evaluate(instance, *run.assignment);
        CHECK(check.feasible);
        CHECK(check.value == run.metrics.incumbent_cost);
        ++checked;
      } else {
        CHECK(run.status == SolveStatus::infeasible);
      }
    }
  }
  CHECK(checked >= 8);  // the suite must mostly exercise feasible instances
}

TEST_CASE("the rotating single-edge network reaches the same optimum") {
  const GapInstance instance = generate(Model::A, 3, 4, 7);
  const SolveReport reference = oracle_solve(instance);
  REQUIRE(reference.status == SolveStatus::optimal);
  const NetworkSchedule rotor(ScheduleKind::periodic_single_edge, 3);
  const RunResult run = run_distributed(instance, rotor);
  CHECK(run.status == SolveStatus::optimal);
  CHECK(run.metrics.incumbent_cost == reference.cost);
}

TEST_CASE("coordinator-assisted runs match peer-to-peer answers") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const GapInstance instance = generate(Model::C, 2, 4, seed);
    const NetworkSchedule ring(ScheduleKind::cycle_static, 2);
    const RunResult peer = run_distributed(instance, ring);
    const RunResult cloud = run_cloud_assisted(instance, ring);
    CAPTURE(seed);
    CHECK(cloud.status == peer.status);
    if (peer.status == SolveStatus::optimal) {
      CHECK(cloud.metrics.incumbent_cost == peer.metrics.incumbent_cost);
    }
    // the whole point of the variant: agents keep no subproblem storage
    CHECK(cloud.metrics.max_stored_nodes == 0);
    CHECK(cloud.coordinator_stored_nodes >= 1);
    CHECK(peer.metrics.max_stored_nodes >= 1);
  }
}

TEST_CASE("an impossible task ends the run with no incumbent") {
  GapInstance instance;
  instance.profits.resize(1, 1);
  instance.profits << 3;
  instance.weights.resize(1, 1);
  instance.weights << 5;
  instance.capacity.resize(1);
  instance.capacity << 2;
  const NetworkSchedule solo(ScheduleKind::cycle_static, 1);

  const RunResult peer = run_distributed(instance, solo);
  CHECK(peer.status == SolveStatus::infeasible);
  CHECK_FALSE(peer.assignment.has_value());
  CHECK(std::isnan(peer.metrics.incumbent_cost));

  const RunResult cloud = run_cloud_assisted(instance, solo);
  CHECK(cloud.status == SolveStatus::infeasible);
  CHECK_FALSE(cloud.assignment.has_value());
}

TEST_CASE("stopping at the first incumbent is never slower than exact") {
  const GapInstance instance = generate(Model::A, 2, 4, 3);
  const NetworkSchedule ring(ScheduleKind::cycle_static, 2);
  const RunResult exact = run_distributed(instance, ring);
  RunOptions options;
  options.mode = SolveMode::first_incumbent;
  const RunResult quick = run_distributed(instance, ring, options);
  REQUIRE(exact.status == SolveStatus::optimal);
  REQUIRE(quick.status == SolveStatus::feasible);
  REQUIRE(quick.assignment.has_value());
  CHECK(evaluate(instance, *quick.assignment).feasible);
  CHECK(quick.metrics.incumbent_cost <= exact.metrics.incumbent_cost);
  CHECK(quick.metrics.communication_rounds <= exact.metrics.communication_rounds);
}

TEST_CASE("a tiny round budget aborts loudly") {
  const GapInstance instance = toy_2x2();
  const NetworkSchedule ring(ScheduleKind::cycle_static, 2);
  RunOptions options;
  options.round_cap = 3;
  CHECK_THROWS_AS(run_distributed(instance, ring, options), RoundCapExceeded);
  CHECK_THROWS_AS(run_cloud_assisted(instance, ring, options), RoundCapExceeded);
}

TEST_CASE("identical runs produce identical traces and metrics") {
  const GapInstance instance = generate(Model::A, 2, 4, 3);
  const NetworkSchedule ring(ScheduleKind::cycle_static, 2);
  std::ostringstream first_trace, second_trace;
  RunOptions options;
  options.trace = &first_trace;
  const RunResult first = run_distributed(instance, ring, options);
  options.trace = &second_trace;
  const RunResult second = run_distributed(instance, ring, options);
  CHECK(first.metrics.communication_rounds == second.metrics.communication_rounds);
  CHECK(first.metrics.incumbent_cost == second.metrics.incumbent_cost);
  CHECK(first.metrics.max_stored_nodes == second.metrics.max_stored_nodes);
  CHECK(first_trace.str() == second_trace.str());
  CHECK_FALSE(first_trace.str().empty());
}

TEST_CASE("trace lines follow the documented six-field shape") {
  const GapInstance instance = toy_2x2();
  const NetworkSchedule ring(ScheduleKind::cycle_static, 2);
  std::ostringstream trace;
  RunOptions options;
  options.trace = &trace;
  run_distributed(instance, ring, options);
  std::istringstream lines(trace.str());
  std::string line;
  int n_lines = 0;
  while (std::getline(lines, line)) {
    CAPTURE(line);
    CHECK(trace_line_well_formed(line));
    ++n_lines;
  }
  CHECK(n_lines >= 2);
  CHECK(trace.str().substr(0, 6) == "0,0,0,");
}

TEST_CASE("per-agent labels never decrease over a run") {
  const GapInstance instance = generate(Model::D, 3, 4, 2);
  const NetworkSchedule ring(ScheduleKind::cycle_static, 3);
  std::map<int, int> last_label;
  RunOptions options;
  options.on_round = [&](long long, const std::vector<Agent>& agents) {
    for (std::size_t i = 0; i < agents.size(); ++i) {
      auto& previous = last_label[static_cast<int>(i)];
      CHECK(agents[i].label() >= previous);
      previous = agents[i].label();
    }
  };
  const RunResult run = run_distributed(instance, ring, options);
  CHECK(run.status != SolveStatus::feasible);
  CHECK(run.metrics.communication_rounds > 0);
}
