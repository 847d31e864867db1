#pragma once

#include <functional>
#include <optional>

#include "lineforward/core.hpp"
#include "lineforward/policies.hpp"

namespace lineforward {

struct TraceViolation {
  PacketId packet = -1;  // -1 when the violation is not tied to one packet
  Time t = -1;
  RouterIndex router = -1;
  std::string rule;
  std::string detail;
};

std::string to_string(const TraceViolation& v);

// Raised when a simulation runs past its horizon with unfinished packets.
struct SimulationError : std::runtime_error {
  std::vector<PacketId> stuck;
  SimulationError(std::string message, std::vector<PacketId> stuck_packets)
      : std::runtime_error(std::move(message)), stuck(std::move(stuck_packets)) {}
};

// Every zealous schedule finishes by this step: one hop of work per unit of
// length, plus at most one transfer gap per router, after the last release.
Time default_horizon(const Instance& instance);

// Synchronous simulation. All routers decide on the start-of-step snapshot:
// a packet forwarded at step t is visible to the next router from t+1, and a
// packet released at t is visible at t. Routers with non-empty queues must
// forward (zealous by construction). Throws SimulationError when the horizon
// is exhausted and std::invalid_argument on bad instances/policy choices.
Trace simulate(const Instance& instance, const Policy& policy,
               std::optional<Time> horizon = std::nullopt);

// Structural checks of a trace against an instance; violations are returned
// as data, not thrown. Empty result = valid complete schedule.
std::vector<TraceViolation> validate_trace(const Instance& instance,
                                           const Trace& trace);

// True when, under the trace's own history, no router ever idles at a step
// where it has at least one packet waiting. Requires a valid trace.
bool is_zealous(const Instance& instance, const Trace& trace);

}  // namespace lineforward
