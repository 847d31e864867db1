#pragma once

#include <functional>
#include <map>

#include "lineforward/core.hpp"

namespace lineforward {

// A policy is a deterministic, stateless choice function over one router's
// local queue. It must return the id of some queued packet.
struct Policy {
  std::string name;
  std::function<PacketId(const LocalView&)> select;
};

// Per-router ordered block-label preference lists.
struct BlockPreference {
  std::map<RouterIndex, std::vector<std::string>> prefs;

  bool operator==(const BlockPreference&) const = default;
};

// Highest priority (age + remaining) first; ties by earlier release, then id.
PacketId greedy_select(const LocalView& view);

// Earliest release first; ties by id.
PacketId earliest_arrival_select(const LocalView& view);

// Most remaining hops first; ties by earlier release, then id.
PacketId furthest_to_go_select(const LocalView& view);

Policy make_greedy();
Policy make_earliest_arrival();
Policy make_furthest_to_go();

// Ranks queued packets by the position of their block label in the router's
// preference list (labels missing from the list, and unlabeled packets, rank
// last), ties by (release, id). Binds to the instance to resolve labels;
// throws std::invalid_argument when a referenced label does not exist.
Policy make_block_preference(const Instance& instance,
                             const BlockPreference& prefs);

// Parses "1=B1,A1;2=B1,B2" style preference specs.
BlockPreference parse_block_preference(const std::string& spec);

// Resolves "greedy", "earliest-arrival", "furthest-to-go" or "block:<spec>".
// The instance is needed only for block preferences.
Policy make_policy(const std::string& name, const Instance& instance);

}  // namespace lineforward
