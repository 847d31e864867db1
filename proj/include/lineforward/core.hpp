#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lineforward {

using Time = std::int64_t;
using PacketId = std::int32_t;
using RouterIndex = std::int32_t;  // routers are 1-based; router k+1 is the sink

// A packet released at `release` on router `origin` must be forwarded once by
// each of the routers origin .. origin+length-1, in order, at most one hop per
// step, and arrives at the next router one step after being forwarded.
struct Packet {
  PacketId id = 0;
  Time release = 0;
  RouterIndex origin = 1;
  int length = 1;
  std::string block;  // optional label, empty = unlabeled

  bool operator==(const Packet&) const = default;
};

struct Instance {
  RouterIndex k = 0;  // number of active routers
  std::vector<Packet> packets;

  bool operator==(const Instance&) const = default;
};

// One unit of work: router `router` forwards packet `packet` at step `t`.
struct Assignment {
  Time t = 0;
  RouterIndex router = 0;
  PacketId packet = 0;

  bool operator==(const Assignment&) const = default;
  auto operator<=>(const Assignment&) const = default;
};

// Assignments sorted by (t, router); idle router-steps are not recorded.
// horizon is the last step carrying any assignment (-1 for an empty trace).
struct Trace {
  std::vector<Assignment> assignments;
  Time horizon = -1;

  bool operator==(const Trace&) const = default;
};

// Snapshot of one packet under a given schedule at a given time.
struct PacketState {
  PacketId id = 0;
  int remaining = 0;          // hops still to perform (0 = completed)
  RouterIndex location = 0;   // router currently responsible (origin+length if done)
  std::optional<Time> completion;
};

struct QueueEntry {
  PacketId id = 0;
  Time release = 0;
  int length = 1;
  int remaining = 1;
};

// Everything a policy is allowed to see: one router's queue at one step.
struct LocalView {
  RouterIndex router = 0;
  Time now = 0;
  std::span<const QueueEntry> queue;
};

struct FlowTimes {
  std::map<PacketId, Time> per_packet;
  Time max = 0;
};

// Age-plus-remaining-work priority of a packet at time `now`.
// Throws std::invalid_argument on now < release or remaining outside [1, length].
Time priority(Time release, int length, int remaining, Time now);

// Accumulated waiting of a packet: now - release - (hops already performed).
Time delay(Time release, int length, int remaining, Time now);

// Validates basic instance shape: k >= 0, unique ids, origins/lengths within
// the line, non-negative releases. Throws std::invalid_argument on violation.
void check_instance(const Instance& instance);

// Flow time (completion - release, completion = last hop step + 1) of every
// packet in a complete valid trace, plus the maximum (0 when empty).
// Throws std::invalid_argument when the trace does not validate.
FlowTimes flow_times(const Instance& instance, const Trace& trace);

// Maximum flow per block label (unlabeled packets grouped under "").
std::map<std::string, Time> block_max_flows(const Instance& instance,
                                            const FlowTimes& flows);

// Per-packet states at time t as induced by a valid trace.
std::vector<PacketState> states_at(const Instance& instance, const Trace& trace,
                                   Time t);

}  // namespace lineforward
