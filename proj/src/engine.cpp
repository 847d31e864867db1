#include "lineforward/engine.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace lineforward {

std::string to_string(const TraceViolation& v) {
  std::string s = "rule=" + v.rule;
  if (v.packet >= 0) s += " packet=" + std::to_string(v.packet);
  if (v.t >= 0) s += " t=" + std::to_string(v.t);
  if (v.router >= 0) s += " router=" + std::to_string(v.router);
  if (!v.detail.empty()) s += ": " + v.detail;
  return s;
}

Time default_horizon(const Instance& instance) {
  Time max_release = 0;
  Time total_length = 0;
  for (const Packet& p : instance.packets) {
    max_release = std::max(max_release, p.release);
    total_length += p.length;
  }
  if (instance.packets.empty()) return 0;
  return max_release + total_length + instance.k;
}

Trace simulate(const Instance& instance, const Policy& policy,
               std::optional<Time> horizon) {
  check_instance(instance);
  const Time limit = horizon.value_or(default_horizon(instance));
  if (limit < 0) throw std::invalid_argument("simulate: negative horizon");

  std::vector<const Packet*> releases;
  releases.reserve(instance.packets.size());
  for (const Packet& p : instance.packets) releases.push_back(&p);
  std::stable_sort(releases.begin(), releases.end(),
                   [](const Packet* a, const Packet* b) {
                     return a->release < b->release;
                   });

  std::vector<std::vector<QueueEntry>> queues(
      static_cast<std::size_t>(instance.k) + 1);
  // Forwarded-but-unfinished packets become visible one step later.
  std::vector<std::pair<RouterIndex, QueueEntry>> arriving;

  Trace trace;
  std::size_t next_release = 0;
  std::size_t completed = 0;
  const std::size_t total = instance.packets.size();
  Time t = 0;

  auto stuck_packets = [&]() {
    std::unordered_map<PacketId, int> hops;
    for (const Assignment& a : trace.assignments) hops[a.packet]++;
    std::vector<PacketId> stuck;
    for (const Packet& p : instance.packets)
      if (hops[p.id] < p.length) stuck.push_back(p.id);
    std::sort(stuck.begin(), stuck.end());
    return stuck;
  };

  while (completed < total) {
    // Fast-forward over gaps where nothing is queued or in flight.
    if (arriving.empty() && next_release < releases.size()) {
      bool any_queued = false;
      for (const auto& q : queues)
        if (!q.empty()) { any_queued = true; break; }
      if (!any_queued) t = std::max(t, releases[next_release]->release);
    }
    if (t > limit) {
      auto stuck = stuck_packets();
      std::string msg = "simulate: horizon " + std::to_string(limit) +
                        " exhausted with incomplete packets:";
      for (std::size_t i = 0; i < stuck.size() && i < 16; ++i)
        msg += " " + std::to_string(stuck[i]);
      if (stuck.size() > 16) msg += " ...";
      throw SimulationError(msg, std::move(stuck));
    }

    for (auto& [router, entry] : arriving)
      queues[static_cast<std::size_t>(router)].push_back(entry);
    arriving.clear();
    while (next_release < releases.size() &&
           releases[next_release]->release == t) {
      const Packet* p = releases[next_release++];
      queues[static_cast<std::size_t>(p->origin)].push_back(
          {p->id, p->release, p->length, p->length});
    }

    for (RouterIndex r = 1; r <= instance.k; ++r) {
      auto& queue = queues[static_cast<std::size_t>(r)];
      if (queue.empty()) continue;
      LocalView view{r, t, std::span<const QueueEntry>(queue)};
      PacketId chosen = policy.select(view);
      auto it = std::find_if(queue.begin(), queue.end(),
                             [&](const QueueEntry& e) { return e.id == chosen; });
      if (it == queue.end())
        throw std::invalid_argument(
            "simulate: policy '" + policy.name + "' chose packet " +
            std::to_string(chosen) + " not queued at router " +
            std::to_string(r) + " at step " + std::to_string(t));
      trace.assignments.push_back({t, r, chosen});
      QueueEntry forwarded = *it;
      *it = queue.back();
      queue.pop_back();
      forwarded.remaining -= 1;
      if (forwarded.remaining > 0)
        arriving.emplace_back(r + 1, forwarded);
      else
        ++completed;
    }
    ++t;
  }

  trace.horizon = trace.assignments.empty() ? -1 : trace.assignments.back().t;
  return trace;
}

std::vector<TraceViolation> validate_trace(const Instance& instance,
                                           const Trace& trace) {
  std::vector<TraceViolation> violations;
  auto add = [&](PacketId packet, Time t, RouterIndex router, std::string rule,
                 std::string detail) {
    violations.push_back(
        {packet, t, router, std::move(rule), std::move(detail)});
  };

  try {
    check_instance(instance);
  } catch (const std::invalid_argument& e) {
    add(-1, -1, -1, "instance", e.what());
    return violations;
  }

  std::unordered_map<PacketId, const Packet*> by_id;
  for (const Packet& p : instance.packets) by_id.emplace(p.id, &p);

  Time max_t = -1;
  std::unordered_set<std::uint64_t> slots;
  const Assignment* prev = nullptr;
  std::unordered_map<PacketId, std::vector<Assignment>> per_packet;
  for (const Assignment& a : trace.assignments) {
    if (prev && !(prev->t < a.t || (prev->t == a.t && prev->router < a.router)))
      add(a.packet, a.t, a.router, "record order",
          "assignments must be sorted by (t, router)");
    prev = &a;
    if (a.t < 0) {
      add(a.packet, a.t, a.router, "time range", "negative step");
      continue;
    }
    max_t = std::max(max_t, a.t);
    if (a.router < 1 || a.router > instance.k) {
      add(a.packet, a.t, a.router, "router out of range", "");
      continue;
    }
    std::uint64_t key = (static_cast<std::uint64_t>(a.t) << 16) |
                        static_cast<std::uint64_t>(a.router);
    if (!slots.insert(key).second)
      add(a.packet, a.t, a.router, "router capacity",
          "two packets forwarded by one router in one step");
    if (!by_id.count(a.packet)) {
      add(a.packet, a.t, a.router, "unknown packet", "");
      continue;
    }
    per_packet[a.packet].push_back(a);
  }

  if (trace.horizon != max_t)
    add(-1, trace.horizon, -1, "horizon",
        "horizon must equal the last assignment step (-1 when empty)");

  for (const Packet& p : instance.packets) {
    auto it = per_packet.find(p.id);
    std::size_t hops = it == per_packet.end() ? 0 : it->second.size();
    if (hops != static_cast<std::size_t>(p.length)) {
      add(p.id, -1, -1, "hop count",
          "expected " + std::to_string(p.length) + " hops, found " +
              std::to_string(hops));
      continue;
    }
    auto& seq = it->second;
    std::sort(seq.begin(), seq.end());
    if (seq.front().t < p.release)
      add(p.id, seq.front().t, seq.front().router, "processed before release",
          "release " + std::to_string(p.release));
    for (std::size_t i = 0; i < seq.size(); ++i) {
      RouterIndex expected = p.origin + static_cast<RouterIndex>(i);
      if (seq[i].router != expected) {
        add(p.id, seq[i].t, seq[i].router, "hop order",
            "expected router " + std::to_string(expected));
        break;
      }
      if (i > 0 && seq[i].t <= seq[i - 1].t) {
        add(p.id, seq[i].t, seq[i].router, "transfer gap",
            "consecutive hops need at least one step in between");
        break;
      }
    }
  }

  return violations;
}

bool is_zealous(const Instance& instance, const Trace& trace) {
  if (!validate_trace(instance, trace).empty())
    throw std::invalid_argument("is_zealous: trace does not validate");
  if (trace.assignments.empty()) return true;

  const Time horizon = trace.horizon;
  std::unordered_map<PacketId, std::vector<Assignment>> per_packet;
  for (const Assignment& a : trace.assignments)
    per_packet[a.packet].push_back(a);

  // waiting[r][t] counts packets sitting at router r at step t; a zealous
  // schedule must assign work to r at every step where the count is positive.
  std::vector<std::vector<int>> waiting(
      static_cast<std::size_t>(instance.k) + 1,
      std::vector<int>(static_cast<std::size_t>(horizon) + 2, 0));
  for (const Packet& p : instance.packets) {
    const auto& seq = per_packet.at(p.id);
    Time arrive = p.release;
    for (const Assignment& hop : seq) {
      auto& row = waiting[static_cast<std::size_t>(hop.router)];
      row[static_cast<std::size_t>(arrive)] += 1;
      row[static_cast<std::size_t>(hop.t) + 1] -= 1;
      arrive = hop.t + 1;
    }
  }

  std::vector<std::unordered_set<Time>> assigned(
      static_cast<std::size_t>(instance.k) + 1);
  for (const Assignment& a : trace.assignments)
    assigned[static_cast<std::size_t>(a.router)].insert(a.t);

  for (RouterIndex r = 1; r <= instance.k; ++r) {
    int count = 0;
    const auto& row = waiting[static_cast<std::size_t>(r)];
    for (Time t = 0; t <= horizon; ++t) {
      count += row[static_cast<std::size_t>(t)];
      if (count > 0 && !assigned[static_cast<std::size_t>(r)].count(t))
        return false;
    }
  }
  return true;
}

}  // namespace lineforward
