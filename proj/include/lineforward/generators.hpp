#pragma once

#include "lineforward/core.hpp"
#include "lineforward/policies.hpp"

namespace lineforward {

// Predicted flow times for the layered lower-bound family: overall maxima for
// Greedy and for the canonical reference schedule, plus per-block maxima.
struct FamilyPrediction {
  Time greedy_max_flow = 0;
  Time opt_max_flow = 0;
  std::map<std::string, Time> greedy_block_flow;
  std::map<std::string, Time> opt_block_flow;
};

// Two-router instance: h unit packets at (0, router 1), h two-hop packets at
// (2, router 1), 2h unit packets at (h+3, router 2). Blocks A1/B1/B2.
// Greedy ends at 3h-2 while preferring B1 on router 1 achieves 2h. h >= 4.
Instance gen_prop_k2(Time h);

// Layered family on k routers with pressure parameter h (k >= 2, h >= 2, even).
// Block A_i arrives on router max(1, i-1), block B_i two steps later on router
// i; sizes double toward the right end so Greedy pays nearly twice the
// reference schedule's maximum flow time.
std::pair<Instance, FamilyPrediction> gen_greedy_family(RouterIndex k, Time h);

// Warm-up adversary instance: 2h "short" unit packets at (0, router 1), h
// "long" two-hop packets at (h, router 1), and optionally 3h "jam" unit
// packets at (2h+1, router 2). h >= 1.
Instance gen_warmup_65(Time h, bool with_jam);

struct Adversary65Result {
  Instance instance;
  Time policy_value = 0;
  Time offline_value = 1;
  double ratio = 1.0;
  bool jammed = false;              // which branch was returned
  Time longs_forwarded_early = 0;   // long packets router 1 forwarded before 2h
};

// Runs the two-branch warm-up adversary against a deterministic policy:
// simulates the jam-free prefix, then compares stopping (offline 2h+1)
// against adding the jam (offline 3h) and returns the better branch.
// Offline values are certified by validated block-preference schedules.
Adversary65Result adversary_65(const Policy& policy, Time h);

struct StageRecord {
  int stage = 0;
  Time t = 0;
  RouterIndex router = 0;
  Time u = 0;
  Time backlog = 0;               // packets still needing `router` at time t
  Time longs_forwarded_early = 0; // stage longs forwarded on `router` before t+u
  double slack = 0.0;             // y + L - U/3, the per-stage budget overrun
};

struct Adversary43Result {
  Instance instance;
  Time policy_value = 0;
  Time offline_value = 1;
  double ratio = 1.0;
  bool early_exit = false;
  std::vector<StageRecord> stages;
};

// Staged adversary: each stage j releases U_j unit packets at (t_j, router
// j+1) and U_j/2 two-hop packets at (t_j + U_j/2, router j+1), with
// t_{j+1} = t_j + U_j + 1 and U_{j+1} = 3U_j/2, finishing with U_final jam
// packets on the next router. Stops early when the policy's max flow already
// exceeds 4/3 of the certified stop-here offline schedule. The ambient line
// has k = 2^stages * ell routers so every U_j stays even while halving.
// Throws std::invalid_argument on bad parameters and std::runtime_error when
// two prefix simulations of the policy disagree (non-deterministic policy).
Adversary43Result adversary_43(const Policy& policy, int stages, Time ell);

}  // namespace lineforward
