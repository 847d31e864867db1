#include "lineforward/generators.hpp"

#include <algorithm>

#include "lineforward/engine.hpp"
#include "lineforward/offline.hpp"

namespace lineforward {

namespace {

void append_block(Instance& instance, Time count, Time release,
                  RouterIndex origin, int length, const std::string& label) {
  for (Time i = 0; i < count; ++i) {
    Packet p;
    p.id = static_cast<PacketId>(instance.packets.size());
    p.release = release;
    p.origin = origin;
    p.length = length;
    p.block = label;
    instance.packets.push_back(std::move(p));
  }
}

// Released packets the trace still owes a hop on `router` at time t.
Time needs_router_count(const Instance& instance, const Trace& trace,
                        RouterIndex router, Time t) {
  std::vector<char> pending(instance.packets.size() + 1, 0);
  std::vector<Time> release_of(instance.packets.size() + 1, 0);
  for (std::size_t i = 0; i < instance.packets.size(); ++i)
    release_of[static_cast<std::size_t>(instance.packets[i].id)] =
        instance.packets[i].release;
  for (const Assignment& a : trace.assignments)
    if (a.router == router && a.t >= t)
      pending[static_cast<std::size_t>(a.packet)] = 1;
  Time count = 0;
  for (std::size_t id = 0; id < pending.size(); ++id)
    if (pending[id] && release_of[id] <= t) ++count;
  return count;
}

void check_prefix_determinism(const Trace& previous, const Trace& current,
                              Time before, const std::string& policy_name) {
  auto cut = [before](const Trace& tr) {
    auto it = std::lower_bound(
        tr.assignments.begin(), tr.assignments.end(), before,
        [](const Assignment& a, Time value) { return a.t < value; });
    return std::span<const Assignment>(tr.assignments.begin(), it);
  };
  auto prev = cut(previous);
  auto curr = cut(current);
  if (!std::equal(prev.begin(), prev.end(), curr.begin(), curr.end()))
    throw std::runtime_error(
        "adversary: policy '" + policy_name +
        "' is not deterministic: two prefix simulations disagree before step " +
        std::to_string(before));
}

}  // namespace

Instance gen_prop_k2(Time h) {
  if (h < 4) throw std::invalid_argument("gen_prop_k2: h must be >= 4");
  Instance instance;
  instance.k = 2;
  append_block(instance, h, 0, 1, 1, "A1");
  append_block(instance, h, 2, 1, 2, "B1");
  append_block(instance, 2 * h, h + 3, 2, 1, "B2");
  return instance;
}

std::pair<Instance, FamilyPrediction> gen_greedy_family(RouterIndex k, Time h) {
  if (k < 2 || k > 30)
    throw std::invalid_argument("gen_greedy_family: k must be in [2, 30]");
  if (h < 2 || h % 2 != 0)
    throw std::invalid_argument("gen_greedy_family: h must be even and >= 2");
  const Time pow_k1 = Time{1} << (k - 1);  // 2^(k-1)
  if (pow_k1 * h * k > Time{50'000'000})
    throw std::invalid_argument("gen_greedy_family: instance too large");

  Instance instance;
  instance.k = k;
  FamilyPrediction prediction;

  Time release_base = 0;  // sum of |B_j| for j < i, plus the drift term
  for (RouterIndex i = 1; i <= k; ++i) {
    const Time r_i = release_base + std::max<Time>(0, i - 2);
    const std::string bi = "B" + std::to_string(i);
    if (i < k) {
      const Time a_count = (pow_k1 >> i) * h;        // 2^(k-1-i) h
      const Time b_count = (pow_k1 - (pow_k1 >> i)) * h;
      const std::string ai = "A" + std::to_string(i);
      append_block(instance, a_count, r_i, std::max<RouterIndex>(1, i - 1),
                   i == 1 ? 1 : 2, ai);
      append_block(instance, b_count, r_i + 2, i, 2, bi);

      if (i == 1) {
        prediction.greedy_block_flow[ai] = (pow_k1 / 2) * h;  // 2^(k-2) h
        // The last A_1 packets run after B_1 only when A_1 outlasts the two
        // steps before B_1 shows up.
        prediction.opt_block_flow[ai] =
            a_count > 2 ? a_count + b_count : a_count;
        prediction.greedy_block_flow[bi] = pow_k1 * h - 1;
        prediction.opt_block_flow[bi] = (pow_k1 / 2) * h + 1;
      } else {
        prediction.greedy_block_flow[ai] = (pow_k1 - (pow_k1 >> i)) * h + 1;
        prediction.opt_block_flow[ai] = pow_k1 * h + 3;
        prediction.greedy_block_flow[bi] = (2 * pow_k1 - (pow_k1 >> (i - 1))) * h;
        prediction.opt_block_flow[bi] = (pow_k1 - (pow_k1 >> i)) * h + 2;
      }
      release_base += b_count;
    } else {
      append_block(instance, pow_k1 * h, r_i + 2, k, 1, bi);
      prediction.greedy_block_flow[bi] = (2 * pow_k1 - 1) * h - 1;
      prediction.opt_block_flow[bi] = pow_k1 * h + 1;
    }
  }

  for (const auto& [label, flow] : prediction.greedy_block_flow)
    prediction.greedy_max_flow = std::max(prediction.greedy_max_flow, flow);
  for (const auto& [label, flow] : prediction.opt_block_flow)
    prediction.opt_max_flow = std::max(prediction.opt_max_flow, flow);
  return {std::move(instance), std::move(prediction)};
}

Instance gen_warmup_65(Time h, bool with_jam) {
  if (h < 1) throw std::invalid_argument("gen_warmup_65: h must be >= 1");
  Instance instance;
  instance.k = 2;
  append_block(instance, 2 * h, 0, 1, 1, "short");
  append_block(instance, h, h, 1, 2, "long");
  if (with_jam) append_block(instance, 3 * h, 2 * h + 1, 2, 1, "jam");
  return instance;
}

Adversary65Result adversary_65(const Policy& policy, Time h) {
  Instance prefix = gen_warmup_65(h, false);
  Trace prefix_trace = simulate(prefix, policy);

  Time y = 0;
  {
    std::vector<char> is_long(prefix.packets.size(), 0);
    for (const Packet& p : prefix.packets)
      if (p.block == "long") is_long[static_cast<std::size_t>(p.id)] = 1;
    for (const Assignment& a : prefix_trace.assignments)
      if (a.router == 1 && a.t < 2 * h &&
          is_long[static_cast<std::size_t>(a.packet)])
        ++y;
  }

  const Time stop_value = flow_times(prefix, prefix_trace).max;
  BlockPreference shorts_first{{{1, {"short", "long"}}, {2, {"long"}}}};
  const Time stop_offline =
      flow_times(prefix, reference_schedule(prefix, shorts_first)).max;

  Instance jammed = gen_warmup_65(h, true);
  Trace jam_trace = simulate(jammed, policy);
  check_prefix_determinism(prefix_trace, jam_trace, 2 * h + 1, policy.name);
  const Time jam_value = flow_times(jammed, jam_trace).max;
  BlockPreference longs_first{{{1, {"long", "short"}}, {2, {"long", "jam"}}}};
  const Time jam_offline =
      flow_times(jammed, reference_schedule(jammed, longs_first)).max;

  Adversary65Result result;
  result.longs_forwarded_early = y;
  // Cross-multiplied comparison keeps the branch choice exact.
  if (jam_value * stop_offline >= stop_value * jam_offline) {
    result.instance = std::move(jammed);
    result.policy_value = jam_value;
    result.offline_value = jam_offline;
    result.jammed = true;
  } else {
    result.instance = std::move(prefix);
    result.policy_value = stop_value;
    result.offline_value = stop_offline;
    result.jammed = false;
  }
  result.ratio = static_cast<double>(result.policy_value) /
                 static_cast<double>(result.offline_value);
  return result;
}

namespace {

// Preference lists realizing the staged offline schedules: every router clears
// the previous stage's two-hop packets on arrival, then the local stage runs
// longs before the leftover shorts (or shorts first on the final stage when
// evaluating the stop-here certificate).
BlockPreference adv43_prefs(int n_stages, bool shorts_first_last,
                            bool with_jam) {
  BlockPreference bp;
  for (int j = 0; j < n_stages; ++j) {
    std::vector<std::string> list;
    if (j >= 1) list.push_back("L" + std::to_string(j - 1));
    const std::string sj = "S" + std::to_string(j);
    const std::string lj = "L" + std::to_string(j);
    if (shorts_first_last && j == n_stages - 1) {
      list.push_back(sj);
      list.push_back(lj);
    } else {
      list.push_back(lj);
      list.push_back(sj);
    }
    bp.prefs[j + 1] = std::move(list);
  }
  if (n_stages >= 1) {
    std::vector<std::string> tail{"L" + std::to_string(n_stages - 1)};
    if (with_jam) tail.push_back("JAM");
    bp.prefs[n_stages + 1] = std::move(tail);
  }
  return bp;
}

}  // namespace

Adversary43Result adversary_43(const Policy& policy, int stages, Time ell) {
  if (stages < 0 || stages > 24)
    throw std::invalid_argument("adversary_43: stages must be in [0, 24]");
  if (ell < 1) throw std::invalid_argument("adversary_43: ell must be >= 1");
  const Time k = (Time{1} << stages) * ell;
  if (k > Time{5'000'000})
    throw std::invalid_argument("adversary_43: ambient line too large");
  if (stages + 1 > k)
    throw std::invalid_argument("adversary_43: stages too large for k");

  Adversary43Result result;
  result.instance.k = static_cast<RouterIndex>(k);
  if (stages == 0) return result;  // empty instance, ratio 1

  Time t = 0;
  Time u = k;
  Trace previous;
  Time backlog = 0;

  for (int j = 0; j < stages; ++j) {
    const RouterIndex router = j + 1;
    if (u % 2 != 0) throw std::logic_error("adversary_43: odd stage size");
    append_block(result.instance, u, t, router, 1, "S" + std::to_string(j));
    append_block(result.instance, u / 2, t + u / 2, router, 2,
                 "L" + std::to_string(j));

    Trace trace = simulate(result.instance, policy);
    if (j > 0) check_prefix_determinism(previous, trace, t, policy.name);

    Time y = 0;
    {
      std::vector<char> is_long(result.instance.packets.size(), 0);
      for (const Packet& p : result.instance.packets)
        if (p.block == "L" + std::to_string(j))
          is_long[static_cast<std::size_t>(p.id)] = 1;
      for (const Assignment& a : trace.assignments)
        if (a.router == router && a.t < t + u &&
            is_long[static_cast<std::size_t>(a.packet)])
          ++y;
    }

    StageRecord record;
    record.stage = j;
    record.t = t;
    record.router = router;
    record.u = u;
    record.backlog = backlog;
    record.longs_forwarded_early = y;
    record.slack = static_cast<double>(y) + static_cast<double>(backlog) -
                   static_cast<double>(u) / 3.0;
    result.stages.push_back(record);

    const Time policy_max = flow_times(result.instance, trace).max;
    const Trace stop_reference = reference_schedule(
        result.instance, adv43_prefs(j + 1, /*shorts_first_last=*/true,
                                     /*with_jam=*/false));
    const Time stop_offline = flow_times(result.instance, stop_reference).max;
    if (3 * policy_max > 4 * stop_offline) {
      result.policy_value = policy_max;
      result.offline_value = stop_offline;
      result.ratio = static_cast<double>(policy_max) /
                     static_cast<double>(stop_offline);
      result.early_exit = true;
      return result;
    }

    const Time t_next = t + u + 1;
    backlog = needs_router_count(result.instance, trace, router + 1, t_next);
    previous = std::move(trace);
    t = t_next;
    u = u * 3 / 2;
  }

  StageRecord final_record;
  final_record.stage = stages;
  final_record.t = t;
  final_record.router = stages + 1;
  final_record.u = u;
  final_record.backlog = backlog;
  result.stages.push_back(final_record);

  append_block(result.instance, u, t, stages + 1, 1, "JAM");
  Trace trace = simulate(result.instance, policy);
  check_prefix_determinism(previous, trace, t, policy.name);
  result.policy_value = flow_times(result.instance, trace).max;
  const Trace final_reference = reference_schedule(
      result.instance,
      adv43_prefs(stages, /*shorts_first_last=*/false, /*with_jam=*/true));
  result.offline_value = flow_times(result.instance, final_reference).max;
  result.ratio = static_cast<double>(result.policy_value) /
                 static_cast<double>(result.offline_value);
  return result;
}

}  // namespace lineforward
