#include "lineforward/core.hpp"

#include "doctest.h"

using namespace lineforward;

namespace {

// Small hand-checked instance: two labeled packets on router 1, one
// unlabeled packet on router 2.
Instance tiny_instance() {
  Instance ins;
  ins.k = 2;
  ins.packets = {
      {1, 0, 1, 2, "A"},
      {2, 1, 1, 1, "B"},
      {3, 0, 2, 1, ""},
  };
  return ins;
}

// A complete schedule for tiny_instance, worked out by hand.
Trace tiny_trace() {
  Trace trace;
  trace.assignments = {
      {0, 1, 1},
      {0, 2, 3},
      {1, 1, 2},
      {1, 2, 1},
  };
  trace.horizon = 1;
  return trace;
}

}  // namespace

TEST_CASE("priority and delay") {
  CHECK(priority(0, 1, 1, 0) == 1);
  CHECK(priority(0, 2, 2, 0) == 2);
  CHECK(priority(3, 2, 1, 7) == 5);
  CHECK(delay(0, 1, 1, 0) == 0);
  CHECK(delay(3, 2, 1, 7) == 3);

  // Age splits into waiting plus work performed, so the two measures always
  // differ by exactly the packet length.
  for (Time release : {0, 2, 5}) {
    for (int length : {1, 2, 3}) {
      for (int remaining = 1; remaining <= length; ++remaining) {
        for (Time now = release; now < release + 6; ++now) {
          CHECK(priority(release, length, remaining, now) -
                    delay(release, length, remaining, now) ==
                length);
        }
      }
    }
  }

  CHECK_THROWS_AS(priority(5, 1, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(priority(0, 2, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(priority(0, 2, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(priority(0, 0, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(delay(5, 1, 1, 4), std::invalid_argument);
}

TEST_CASE("check_instance accepts valid shapes") {
  CHECK_NOTHROW(check_instance(Instance{}));
  CHECK_NOTHROW(check_instance(tiny_instance()));

  Instance span;
  span.k = 3;
  span.packets = {{1, 0, 1, 3, ""}, {2, 4, 3, 1, ""}};
  CHECK_NOTHROW(check_instance(span));
}

TEST_CASE("check_instance rejects malformed instances") {
  Instance ins;
  ins.k = -1;
  CHECK_THROWS_AS(check_instance(ins), std::invalid_argument);

  ins = tiny_instance();
  ins.packets[1].id = 1;
  CHECK_THROWS_AS(check_instance(ins), std::invalid_argument);

  ins = tiny_instance();
  ins.packets[0].release = -2;
  CHECK_THROWS_AS(check_instance(ins), std::invalid_argument);

  ins = tiny_instance();
  ins.packets[0].length = 0;
  CHECK_THROWS_AS(check_instance(ins), std::invalid_argument);

  ins = tiny_instance();
  ins.packets[0].origin = 0;
  CHECK_THROWS_AS(check_instance(ins), std::invalid_argument);

  ins = tiny_instance();
  ins.packets[0].origin = 3;
  CHECK_THROWS_AS(check_instance(ins), std::invalid_argument);

  // Fits the start of the line but runs off the end.
  ins = tiny_instance();
  ins.packets[0].origin = 2;
  CHECK_THROWS_AS(check_instance(ins), std::invalid_argument);

  // k = 0 leaves no router for any packet.
  ins.k = 0;
  ins.packets = {{1, 0, 1, 1, ""}};
  CHECK_THROWS_AS(check_instance(ins), std::invalid_argument);
}

TEST_CASE("flow_times on a hand-checked schedule") {
  const Instance ins = tiny_instance();
  const FlowTimes flows = flow_times(ins, tiny_trace());

  CHECK(flows.per_packet.at(1) == 2);
  CHECK(flows.per_packet.at(2) == 1);
  CHECK(flows.per_packet.at(3) == 1);
  CHECK(flows.max == 2);

  const auto blocks = block_max_flows(ins, flows);
  CHECK(blocks.size() == 3);
  CHECK(blocks.at("A") == 2);
  CHECK(blocks.at("B") == 1);
  CHECK(blocks.at("") == 1);
}

TEST_CASE("flow_times rejects incomplete traces") {
  const Instance ins = tiny_instance();
  Trace trace = tiny_trace();
  trace.assignments.pop_back();
  CHECK_THROWS_AS(flow_times(ins, trace), std::invalid_argument);
}

TEST_CASE("flow_times on an empty instance") {
  const FlowTimes flows = flow_times(Instance{}, Trace{});
  CHECK(flows.per_packet.empty());
  CHECK(flows.max == 0);
}

TEST_CASE("states_at snapshots") {
  const Instance ins = tiny_instance();
  const Trace trace = tiny_trace();

  auto at0 = states_at(ins, trace, 0);
  REQUIRE(at0.size() == 3);
  CHECK(at0[0].remaining == 2);
  CHECK(at0[0].location == 1);
  CHECK(!at0[0].completion.has_value());

  auto at1 = states_at(ins, trace, 1);
  CHECK(at1[0].remaining == 1);
  CHECK(at1[0].location == 2);
  CHECK(!at1[0].completion.has_value());
  CHECK(at1[1].remaining == 1);
  CHECK(at1[1].location == 1);
  CHECK(at1[2].remaining == 0);
  CHECK(at1[2].location == 3);
  CHECK(at1[2].completion == Time{1});

  auto at2 = states_at(ins, trace, 2);
  CHECK(at2[0].remaining == 0);
  CHECK(at2[0].location == 3);
  CHECK(at2[0].completion == Time{2});
  CHECK(at2[1].completion == Time{2});
}
