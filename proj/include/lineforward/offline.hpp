#pragma once

#include "lineforward/core.hpp"
#include "lineforward/policies.hpp"

namespace lineforward {

struct OptResult {
  Time value = 0;
  Trace trace;
  std::uint64_t nodes_explored = 0;
  bool exact = true;  // false when a node budget cut some feasibility probe
};

// Simulates the block-preference policy for `prefs` and returns the validated
// trace. All packets must carry block labels.
Trace reference_schedule(const Instance& instance, const BlockPreference& prefs);

// Canonical preference lists inferred from the instance's label vocabulary:
// A*/B* layered families (router r prefers B_{r-1}, B_r, A_r, A_{r+1}),
// short/long/jam warm-up instances (longs first when a jam is present, shorts
// first otherwise), and S*/L*/JAM staged instances. Throws when the labels
// match no known vocabulary.
BlockPreference canonical_reference_prefs(const Instance& instance);

// Combinatorial lower bound on the optimal maximum flow time: any set of
// packets needing one router, released from some time on, must cross it one
// per step. At least max packet length, and 0 on empty instances.
Time load_lower_bound(const Instance& instance);

// Exact minimum maximum flow time via binary search over feasibility, each
// probe a depth-first search over zealous schedules with deadline pruning and
// representative collapsing of packets identical in (release, origin, length).
// node_budget bounds each probe; on exhaustion the best certified upper bound
// is returned with exact = false. Throws std::invalid_argument on bad budgets.
OptResult brute_force_opt(const Instance& instance,
                          std::uint64_t node_budget = 10'000'000);

}  // namespace lineforward
