#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "gapbp/network.hpp"

using namespace gapbp;

namespace {

bool has_edge(const std::vector<std::pair<int, int>>& edges, int from, int to) {
  return std::find(edges.begin(), edges.end(), std::make_pair(from, to)) !=
         edges.end();
}

}  // namespace

TEST_CASE("schedule kinds parse and print both ways") {
  CHECK(parse_schedule_kind("cycle") == ScheduleKind::cycle_static);
  CHECK(parse_schedule_kind("complete") == ScheduleKind::complete_static);
  CHECK(parse_schedule_kind("periodic-edge") == ScheduleKind::periodic_single_edge);
  CHECK_THROWS_AS(parse_schedule_kind("mesh"), std::invalid_argument);
  CHECK(schedule_kind_name(ScheduleKind::cycle_static) == "cycle");
  CHECK(schedule_kind_name(ScheduleKind::edgeless) == "edgeless");
}

TEST_CASE("the static ring activates every forward edge every round") {
  const NetworkSchedule ring(ScheduleKind::cycle_static, 4);
  CHECK(ring.window() == 1);
  for (long long round : {0LL, 1LL, 77LL}) {
    const auto edges = ring.edges(round);
    REQUIRE(edges.size() == 4);
    CHECK(has_edge(edges, 0, 1));
    CHECK(has_edge(edges, 1, 2));
    CHECK(has_edge(edges, 2, 3));
    CHECK(has_edge(edges, 3, 0));
  }
}

TEST_CASE("the complete graph activates every ordered pair") {
  const NetworkSchedule complete(ScheduleKind::complete_static, 3);
  CHECK(complete.window() == 1);
  const auto edges = complete.edges(5);
  CHECK(edges.size() == 6);
  CHECK(has_edge(edges, 2, 0));
  CHECK_FALSE(has_edge(edges, 1, 1));
}

TEST_CASE("the rotating single edge walks around the ring") {
  const NetworkSchedule rotor(ScheduleKind::periodic_single_edge, 3);
  CHECK(rotor.window() == 3);
  CHECK(rotor.edges(0) == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(rotor.edges(1) == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(rotor.edges(2) == std::vector<std::pair<int, int>>{{2, 0}});
  CHECK(rotor.edges(3) == std::vector<std::pair<int, int>>{{0, 1}});  // period n
}

TEST_CASE("a lone agent needs no edges and still checks out") {
  const NetworkSchedule solo(ScheduleKind::cycle_static, 1);
  CHECK(solo.edges(0).empty());
  CHECK(check_schedule(solo, 1));
}

TEST_CASE("joint strong connectivity holds for the shipped schedules") {
  for (int n = 2; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(check_schedule(NetworkSchedule(ScheduleKind::cycle_static, n), 1));
    CHECK(check_schedule(NetworkSchedule(ScheduleKind::complete_static, n), 1));
    CHECK(check_schedule(NetworkSchedule(ScheduleKind::periodic_single_edge, n), n));
  }
}

TEST_CASE("too-short windows and silent graphs fail the check") {
  CHECK_FALSE(check_schedule(NetworkSchedule(ScheduleKind::periodic_single_edge, 5), 4));
  for (int n = 2; n <= 6; ++n) {
    CHECK_FALSE(check_schedule(NetworkSchedule(ScheduleKind::edgeless, n), 1));
    CHECK_FALSE(check_schedule(NetworkSchedule(ScheduleKind::edgeless, n), 10));
  }
  CHECK_FALSE(check_schedule(NetworkSchedule(ScheduleKind::cycle_static, 3), 0));
}

TEST_CASE("schedules refuse an empty fleet") {
  CHECK_THROWS_AS(NetworkSchedule(ScheduleKind::cycle_static, 0),
                  std::invalid_argument);
}
