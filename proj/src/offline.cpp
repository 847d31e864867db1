#include "lineforward/offline.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "lineforward/engine.hpp"

namespace lineforward {

Trace reference_schedule(const Instance& instance,
                         const BlockPreference& prefs) {
  check_instance(instance);
  for (const Packet& p : instance.packets)
    if (p.block.empty())
      throw std::invalid_argument(
          "reference_schedule: packet " + std::to_string(p.id) +
          " has no block label");
  Trace trace = simulate(instance, make_block_preference(instance, prefs));
  auto violations = validate_trace(instance, trace);
  if (!violations.empty())
    throw std::logic_error("reference_schedule: produced an invalid trace: " +
                           to_string(violations.front()));
  return trace;
}

BlockPreference canonical_reference_prefs(const Instance& instance) {
  std::set<std::string> labels;
  for (const Packet& p : instance.packets) {
    if (p.block.empty())
      throw std::invalid_argument(
          "canonical_reference_prefs: unlabeled packet " +
          std::to_string(p.id));
    labels.insert(p.block);
  }
  if (labels.empty())
    throw std::invalid_argument("canonical_reference_prefs: empty instance");

  auto indexed = [&](char prefix) {
    // Highest numeric suffix over labels like A3 / S2, or -1 when none match.
    int max_index = -1;
    for (const std::string& l : labels) {
      if (l.size() < 2 || l[0] != prefix) continue;
      if (l.find_first_not_of("0123456789", 1) != std::string::npos) continue;
      max_index = std::max(max_index, std::stoi(l.substr(1)));
    }
    return max_index;
  };

  bool family = true;
  for (const std::string& l : labels)
    if (!((l[0] == 'A' || l[0] == 'B') && l.size() >= 2 &&
          l.find_first_not_of("0123456789", 1) == std::string::npos))
      family = false;

  BlockPreference bp;
  if (family) {
    for (RouterIndex r = 1; r <= instance.k; ++r) {
      std::vector<std::string> list;
      for (const std::string& candidate :
           {"B" + std::to_string(r - 1), "B" + std::to_string(r),
            "A" + std::to_string(r), "A" + std::to_string(r + 1)})
        if (labels.count(candidate)) list.push_back(candidate);
      if (!list.empty()) bp.prefs[r] = std::move(list);
    }
    return bp;
  }

  bool warmup = labels.count("short") && labels.count("long");
  for (const std::string& l : labels)
    if (l != "short" && l != "long" && l != "jam") warmup = false;
  if (warmup) {
    const bool jam = labels.count("jam") > 0;
    bp.prefs[1] = jam ? std::vector<std::string>{"long", "short"}
                      : std::vector<std::string>{"short", "long"};
    bp.prefs[2] = jam ? std::vector<std::string>{"long", "jam"}
                      : std::vector<std::string>{"long"};
    return bp;
  }

  bool staged = true;
  for (const std::string& l : labels)
    if (l != "JAM" &&
        !((l[0] == 'S' || l[0] == 'L') && l.size() >= 2 &&
          l.find_first_not_of("0123456789", 1) == std::string::npos))
      staged = false;
  if (staged) {
    const int n_stages = std::max(indexed('S'), indexed('L')) + 1;
    for (int j = 0; j < n_stages; ++j) {
      std::vector<std::string> list;
      if (j >= 1 && labels.count("L" + std::to_string(j - 1)))
        list.push_back("L" + std::to_string(j - 1));
      if (labels.count("L" + std::to_string(j)))
        list.push_back("L" + std::to_string(j));
      if (labels.count("S" + std::to_string(j)))
        list.push_back("S" + std::to_string(j));
      if (!list.empty()) bp.prefs[j + 1] = std::move(list);
    }
    if (n_stages >= 1) {
      std::vector<std::string> tail;
      if (labels.count("L" + std::to_string(n_stages - 1)))
        tail.push_back("L" + std::to_string(n_stages - 1));
      if (labels.count("JAM")) tail.push_back("JAM");
      if (!tail.empty()) bp.prefs[n_stages + 1] = std::move(tail);
    }
    return bp;
  }

  throw std::invalid_argument(
      "canonical_reference_prefs: no canonical preference order for these "
      "labels; pass explicit preferences instead");
}

Time load_lower_bound(const Instance& instance) {
  check_instance(instance);
  Time best = 0;
  for (const Packet& p : instance.packets)
    best = std::max(best, static_cast<Time>(p.length));

  for (RouterIndex i = 1; i <= instance.k; ++i) {
    std::vector<std::pair<Time, Time>> items;  // (release, earliest step here)
    for (const Packet& p : instance.packets)
      if (p.origin <= i && i < p.origin + p.length)
        items.emplace_back(p.release, p.release + (i - p.origin));
    if (items.empty()) continue;
    std::sort(items.begin(), items.end());
    const Time latest_release = items.back().first;

    // For S = all packets here released from items[j].first on: they cross
    // this router one per step from min earliest, so the latest-released one
    // completes at least min_e + |S| steps after time zero.
    Time suffix_min_e = std::numeric_limits<Time>::max();
    std::vector<Time> min_e_from(items.size());
    for (std::size_t j = items.size(); j-- > 0;) {
      suffix_min_e = std::min(suffix_min_e, items[j].second);
      min_e_from[j] = suffix_min_e;
    }
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (j > 0 && items[j].first == items[j - 1].first) continue;
      const Time bound = min_e_from[j] +
                         static_cast<Time>(items.size() - j) - latest_release;
      best = std::max(best, bound);
    }
  }
  return best;
}

namespace {

enum class Probe { kFeasible, kInfeasible, kUnknown };

struct PacketInfo {
  Time release = 0;
  RouterIndex origin = 1;
  int length = 1;
  RouterIndex last = 1;
  int class_id = 0;
};

struct FeasibilitySearch {
  const Instance& instance;
  std::vector<PacketInfo> info;
  Time flow_bound = 0;
  Time horizon = 0;
  std::uint64_t budget = 0;
  std::uint64_t nodes = 0;

  std::vector<int> remaining;
  std::vector<Time> available;
  std::vector<Assignment> path;
  std::vector<Assignment> found;

  explicit FeasibilitySearch(const Instance& inst) : instance(inst) {
    info.reserve(inst.packets.size());
    std::map<std::tuple<Time, RouterIndex, int>, int> classes;
    for (const Packet& p : inst.packets) {
      PacketInfo pi;
      pi.release = p.release;
      pi.origin = p.origin;
      pi.length = p.length;
      pi.last = p.origin + p.length - 1;
      auto [it, inserted] = classes.try_emplace(
          std::make_tuple(p.release, p.origin, p.length),
          static_cast<int>(classes.size()));
      pi.class_id = it->second;
      info.push_back(pi);
    }
  }

  Probe run(Time bound) {
    flow_bound = bound;
    remaining.assign(instance.packets.size(), 0);
    available.assign(instance.packets.size(), 0);
    for (std::size_t i = 0; i < instance.packets.size(); ++i) {
      remaining[i] = info[i].length;
      available[i] = info[i].release;
    }
    path.clear();
    found.clear();
    return step(0);
  }

  RouterIndex current_router(std::size_t i) const {
    return info[i].origin + (info[i].length - remaining[i]);
  }

  Time deadline(std::size_t i) const {
    // The hop on the current router must leave time for the hops after it.
    return info[i].release + flow_bound -
           (info[i].last - current_router(i)) - 1;
  }

  Probe step(Time t) {
    if (++nodes > budget) return Probe::kUnknown;

    bool all_done = true;
    bool any_queued = false;
    Time next_event = std::numeric_limits<Time>::max();
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (remaining[i] == 0) continue;
      all_done = false;
      if (std::max(t, available[i]) > deadline(i)) return Probe::kInfeasible;
      if (available[i] <= t)
        any_queued = true;
      else
        next_event = std::min(next_event, available[i]);
    }
    if (all_done) {
      found = path;
      return Probe::kFeasible;
    }
    if (t > horizon) return Probe::kInfeasible;
    if (!any_queued) return step(next_event);
    std::vector<std::size_t> chosen;
    return choose(1, t, chosen);
  }

  Probe choose(RouterIndex router, Time t, std::vector<std::size_t>& chosen) {
    if (router > instance.k) {
      // Apply the whole synchronous step, then move one step forward.
      std::vector<Time> saved;
      saved.reserve(chosen.size());
      for (std::size_t i : chosen) {
        saved.push_back(available[i]);
        remaining[i] -= 1;
        available[i] = t + 1;
      }
      Probe result = step(t + 1);
      for (std::size_t c = 0; c < chosen.size(); ++c) {
        remaining[chosen[c]] += 1;
        available[chosen[c]] = saved[c];
      }
      return result;
    }

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < remaining.size(); ++i)
      if (remaining[i] > 0 && available[i] <= t && current_router(i) == router)
        candidates.push_back(i);
    if (candidates.empty()) return choose(router + 1, t, chosen);

    // One representative per identical class; most urgent deadline first.
    std::sort(candidates.begin(), candidates.end());
    std::vector<std::size_t> reps;
    std::set<int> seen;
    for (std::size_t i : candidates)
      if (seen.insert(info[i].class_id).second) reps.push_back(i);
    std::stable_sort(reps.begin(), reps.end(),
                     [&](std::size_t a, std::size_t b) {
                       return deadline(a) < deadline(b);
                     });

    for (std::size_t i : reps) {
      path.push_back({t, router, instance.packets[i].id});
      chosen.push_back(i);
      Probe result = choose(router + 1, t, chosen);
      chosen.pop_back();
      path.pop_back();
      if (result != Probe::kInfeasible) return result;
    }
    return Probe::kInfeasible;
  }
};

}  // namespace

OptResult brute_force_opt(const Instance& instance, std::uint64_t node_budget) {
  check_instance(instance);
  if (node_budget == 0)
    throw std::invalid_argument("brute_force_opt: node budget must be positive");

  OptResult result;
  if (instance.packets.empty()) return result;

  Trace greedy_trace = simulate(instance, make_greedy());
  Time hi = flow_times(instance, greedy_trace).max;
  Trace hi_trace = std::move(greedy_trace);
  Time lo = load_lower_bound(instance);

  FeasibilitySearch search(instance);
  search.horizon = default_horizon(instance);
  bool any_unknown = false;

  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    search.budget = node_budget;
    search.nodes = 0;
    Probe probe = search.run(mid);
    result.nodes_explored += search.nodes;
    if (probe == Probe::kFeasible) {
      Trace candidate;
      candidate.assignments = search.found;
      candidate.horizon =
          candidate.assignments.empty() ? -1 : candidate.assignments.back().t;
      const Time achieved = flow_times(instance, candidate).max;
      hi = achieved;
      hi_trace = std::move(candidate);
    } else {
      if (probe == Probe::kUnknown) any_unknown = true;
      lo = mid + 1;
    }
  }

  result.value = hi;
  result.trace = std::move(hi_trace);
  result.exact = !any_unknown || result.value == load_lower_bound(instance);
  return result;
}

}  // namespace lineforward
