#include "lineforward/policies.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lineforward {

namespace {

const QueueEntry& require_nonempty(const LocalView& view) {
  if (view.queue.empty())
    throw std::invalid_argument("policy: select called on an empty queue");
  return view.queue.front();
}

}  // namespace

PacketId greedy_select(const LocalView& view) {
  require_nonempty(view);
  const QueueEntry* best = nullptr;
  Time best_priority = 0;
  for (const QueueEntry& e : view.queue) {
    Time p = priority(e.release, e.length, e.remaining, view.now);
    if (!best || p > best_priority ||
        (p == best_priority && (e.release < best->release ||
                                (e.release == best->release && e.id < best->id)))) {
      best = &e;
      best_priority = p;
    }
  }
  return best->id;
}

PacketId earliest_arrival_select(const LocalView& view) {
  require_nonempty(view);
  const QueueEntry* best = nullptr;
  for (const QueueEntry& e : view.queue) {
    if (!best || e.release < best->release ||
        (e.release == best->release && e.id < best->id))
      best = &e;
  }
  return best->id;
}

PacketId furthest_to_go_select(const LocalView& view) {
  require_nonempty(view);
  const QueueEntry* best = nullptr;
  for (const QueueEntry& e : view.queue) {
    if (!best || e.remaining > best->remaining ||
        (e.remaining == best->remaining &&
         (e.release < best->release ||
          (e.release == best->release && e.id < best->id))))
      best = &e;
  }
  return best->id;
}

Policy make_greedy() { return {"greedy", greedy_select}; }

Policy make_earliest_arrival() {
  return {"earliest-arrival", earliest_arrival_select};
}

Policy make_furthest_to_go() {
  return {"furthest-to-go", furthest_to_go_select};
}

Policy make_block_preference(const Instance& instance,
                             const BlockPreference& prefs) {
  std::unordered_set<std::string> labels;
  for (const Packet& p : instance.packets)
    if (!p.block.empty()) labels.insert(p.block);
  for (const auto& [router, list] : prefs.prefs) {
    if (router < 1 || router > instance.k)
      throw std::invalid_argument("block preference: router " +
                                  std::to_string(router) + " out of range");
    for (const std::string& label : list)
      if (!labels.count(label))
        throw std::invalid_argument("block preference: label '" + label +
                                    "' not present in the instance");
  }

  // Resolved at bind time so select stays a pure function of the view.
  auto id_to_label = std::make_shared<std::unordered_map<PacketId, std::string>>();
  for (const Packet& p : instance.packets)
    if (!p.block.empty()) id_to_label->emplace(p.id, p.block);
  auto pref_map =
      std::make_shared<std::map<RouterIndex, std::vector<std::string>>>(prefs.prefs);

  Policy policy;
  policy.name = "block-preference";
  policy.select = [id_to_label, pref_map](const LocalView& view) -> PacketId {
    require_nonempty(view);
    const std::vector<std::string>* list = nullptr;
    if (auto it = pref_map->find(view.router); it != pref_map->end())
      list = &it->second;
    auto rank_of = [&](PacketId id) -> std::size_t {
      if (!list) return SIZE_MAX;
      auto lit = id_to_label->find(id);
      if (lit == id_to_label->end()) return SIZE_MAX;
      auto pos = std::find(list->begin(), list->end(), lit->second);
      return pos == list->end() ? SIZE_MAX
                                : static_cast<std::size_t>(pos - list->begin());
    };
    const QueueEntry* best = nullptr;
    std::size_t best_rank = SIZE_MAX;
    for (const QueueEntry& e : view.queue) {
      std::size_t r = rank_of(e.id);
      if (!best || r < best_rank ||
          (r == best_rank && (e.release < best->release ||
                              (e.release == best->release && e.id < best->id)))) {
        best = &e;
        best_rank = r;
      }
    }
    return best->id;
  };
  return policy;
}

BlockPreference parse_block_preference(const std::string& spec) {
  BlockPreference result;
  std::stringstream groups(spec);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.empty()) continue;
    auto eq = group.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("block preference spec: missing '=' in '" +
                                  group + "'");
    RouterIndex router;
    try {
      std::size_t used = 0;
      router = std::stoi(group.substr(0, eq), &used);
      if (used != eq) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("block preference spec: bad router in '" +
                                  group + "'");
    }
    std::vector<std::string> labels;
    std::stringstream items(group.substr(eq + 1));
    std::string label;
    while (std::getline(items, label, ','))
      if (!label.empty()) labels.push_back(label);
    if (labels.empty())
      throw std::invalid_argument("block preference spec: no labels for router " +
                                  std::to_string(router));
    if (!result.prefs.emplace(router, std::move(labels)).second)
      throw std::invalid_argument("block preference spec: duplicate router " +
                                  std::to_string(router));
  }
  if (result.prefs.empty())
    throw std::invalid_argument("block preference spec: empty");
  return result;
}

Policy make_policy(const std::string& name, const Instance& instance) {
  if (name == "greedy") return make_greedy();
  if (name == "earliest-arrival") return make_earliest_arrival();
  if (name == "furthest-to-go") return make_furthest_to_go();
  if (name.rfind("block:", 0) == 0)
    return make_block_preference(instance,
                                 parse_block_preference(name.substr(6)));
  throw std::invalid_argument("unknown policy '" + name + "'");
}

}  // namespace lineforward
