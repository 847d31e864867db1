#include "lineforward/core.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "lineforward/engine.hpp"

namespace lineforward {

namespace {

void check_priority_args(Time release, int length, int remaining, Time now) {
  if (length < 1) throw std::invalid_argument("priority: length must be >= 1");
  if (remaining < 1 || remaining > length)
    throw std::invalid_argument("priority: remaining must be in [1, length]");
  if (now < release)
    throw std::invalid_argument("priority: packet not released yet");
}

}  // namespace

Time priority(Time release, int length, int remaining, Time now) {
  check_priority_args(release, length, remaining, now);
  return now - release + remaining;
}

Time delay(Time release, int length, int remaining, Time now) {
  check_priority_args(release, length, remaining, now);
  return now - release - (length - remaining);
}

void check_instance(const Instance& instance) {
  if (instance.k < 0) throw std::invalid_argument("instance: k must be >= 0");
  std::unordered_set<PacketId> seen;
  for (const Packet& p : instance.packets) {
    if (!seen.insert(p.id).second)
      throw std::invalid_argument("instance: duplicate packet id " +
                                  std::to_string(p.id));
    if (p.release < 0)
      throw std::invalid_argument("instance: negative release on packet " +
                                  std::to_string(p.id));
    if (p.length < 1)
      throw std::invalid_argument("instance: length must be >= 1 on packet " +
                                  std::to_string(p.id));
    if (p.origin < 1 || p.origin > instance.k ||
        p.origin + p.length > instance.k + 1)
      throw std::invalid_argument("instance: packet " + std::to_string(p.id) +
                                  " does not fit on the line");
  }
}

FlowTimes flow_times(const Instance& instance, const Trace& trace) {
  auto violations = validate_trace(instance, trace);
  if (!violations.empty())
    throw std::invalid_argument("flow_times: invalid trace: " +
                                to_string(violations.front()));

  std::unordered_map<PacketId, Time> last_hop;
  last_hop.reserve(trace.assignments.size());
  for (const Assignment& a : trace.assignments) {
    auto [it, inserted] = last_hop.try_emplace(a.packet, a.t);
    if (!inserted) it->second = std::max(it->second, a.t);
  }

  FlowTimes result;
  for (const Packet& p : instance.packets) {
    Time flow = last_hop.at(p.id) + 1 - p.release;
    result.per_packet.emplace(p.id, flow);
    result.max = std::max(result.max, flow);
  }
  return result;
}

std::map<std::string, Time> block_max_flows(const Instance& instance,
                                            const FlowTimes& flows) {
  std::map<std::string, Time> result;
  for (const Packet& p : instance.packets) {
    Time flow = flows.per_packet.at(p.id);
    auto [it, inserted] = result.try_emplace(p.block, flow);
    if (!inserted) it->second = std::max(it->second, flow);
  }
  return result;
}

std::vector<PacketState> states_at(const Instance& instance, const Trace& trace,
                                   Time t) {
  // A hop performed at step s is reflected in the state from s+1 on.
  std::unordered_map<PacketId, int> done_before;
  std::unordered_map<PacketId, Time> last_hop;
  for (const Assignment& a : trace.assignments) {
    if (a.t < t) done_before[a.packet]++;
    auto [it, inserted] = last_hop.try_emplace(a.packet, a.t);
    if (!inserted) it->second = std::max(it->second, a.t);
  }

  std::vector<PacketState> result;
  result.reserve(instance.packets.size());
  for (const Packet& p : instance.packets) {
    PacketState s;
    s.id = p.id;
    int done = 0;
    if (auto it = done_before.find(p.id); it != done_before.end())
      done = it->second;
    s.remaining = p.length - done;
    s.location = p.origin + done;
    if (auto it = last_hop.find(p.id);
        it != last_hop.end() && it->second + 1 <= t)
      s.completion = it->second + 1;
    result.push_back(s);
  }
  return result;
}

}  // namespace lineforward
