#include "lineforward/analysis.hpp"

#include <algorithm>
#include <unordered_map>

#include "lineforward/engine.hpp"

namespace lineforward {

namespace {

// Per packet, the step of its hop on each router it visits, from a valid trace.
std::unordered_map<PacketId, std::vector<Assignment>> hops_by_packet(
    const Trace& trace) {
  std::unordered_map<PacketId, std::vector<Assignment>> result;
  for (const Assignment& a : trace.assignments)
    result[a.packet].push_back(a);
  for (auto& [id, seq] : result) std::sort(seq.begin(), seq.end());
  return result;
}

void accumulate_needs(const Instance& instance, const Trace& trace,
                      DeltaProfile& profile, bool online) {
  auto hops = hops_by_packet(trace);
  const Time horizon = profile.horizon();
  for (const Packet& p : instance.packets) {
    for (const Assignment& hop : hops.at(p.id)) {
      // Packet p still needs router hop.router for t in [release, hop step].
      auto& row = online ? profile.g_row(hop.router) : profile.a_row(hop.router);
      row[static_cast<std::size_t>(p.release)] += 1;
      if (hop.t + 1 <= horizon) row[static_cast<std::size_t>(hop.t) + 1] -= 1;
    }
  }
  for (RouterIndex i = 1; i <= profile.k(); ++i) {
    auto& row = online ? profile.g_row(i) : profile.a_row(i);
    Time running = 0;
    for (auto& cell : row) {
      running += cell;
      cell = running;
    }
  }
}

}  // namespace

DeltaProfile delta_profile(const Instance& instance, const Trace& online,
                           const Trace& reference) {
  auto check = [&](const Trace& trace, const char* which) {
    auto violations = validate_trace(instance, trace);
    if (!violations.empty())
      throw std::invalid_argument(std::string("delta_profile: ") + which +
                                  " trace invalid: " +
                                  to_string(violations.front()));
  };
  check(online, "online");
  check(reference, "reference");
  if (!is_zealous(instance, reference))
    throw std::invalid_argument("delta_profile: reference trace is not zealous");

  // Horizon = later completion of the two schedules; all counts vanish there.
  Time horizon = 0;
  horizon = std::max(horizon, online.horizon + 1);
  horizon = std::max(horizon, reference.horizon + 1);

  DeltaProfile profile(instance.k, horizon);
  accumulate_needs(instance, online, profile, /*online=*/true);
  accumulate_needs(instance, reference, profile, /*online=*/false);
  return profile;
}

bool check_lemma1(const DeltaProfile& profile) {
  if (profile.k() < 1) return true;
  for (Time t = 0; t <= profile.horizon(); ++t)
    if (profile.delta(1, t) != 0) return false;
  return true;
}

std::vector<Lemma2Violation> check_lemma2(const Instance& instance,
                                          const DeltaProfile& profile,
                                          const Trace& reference) {
  for (const Packet& p : instance.packets)
    if (p.length > 2)
      throw std::invalid_argument("check_lemma2: packet lengths must be 1 or 2");

  auto hops = hops_by_packet(reference);
  std::vector<Lemma2Violation> violations;

  for (RouterIndex i = 2; i <= profile.k(); ++i) {
    for (Time t = 0; t + 1 <= profile.horizon(); ++t) {
      const Time next = profile.delta(i, t + 1);
      const Time left = profile.delta(i - 1, t);
      if (next != profile.delta(i, t) + 1) continue;
      if (!(next > left && left >= 0)) continue;

      // The claim: at time t the reference holds at least next - left alive
      // packets that still need router i-1, each with priority >= next + 1.
      Time found = 0;
      for (const Packet& p : instance.packets) {
        if (p.release > t) continue;
        const auto& seq = hops.at(p.id);
        if (seq.back().t + 1 <= t) continue;  // completed in reference
        bool needs_left = false;
        int remaining = 0;
        for (const Assignment& hop : seq) {
          if (hop.t >= t) {
            ++remaining;
            if (hop.router == i - 1) needs_left = true;
          }
        }
        if (!needs_left) continue;
        if (priority(p.release, p.length, remaining, t) >= next + 1) ++found;
      }
      if (found < next - left)
        violations.push_back({i, t, next - left, found});
    }
  }
  return violations;
}

bool check_lemma3(const DeltaProfile& profile, Time opt_value) {
  if (opt_value < 0) throw std::invalid_argument("check_lemma3: negative opt");
  Time prefix_max = 0;
  for (RouterIndex i = 1; i <= profile.k(); ++i) {
    for (Time t = 0; t <= profile.horizon(); ++t)
      prefix_max = std::max(prefix_max, profile.delta(i, t));
    // prefix_max <= (1 - 2^(1-i)) * opt rearranges to
    // opt - prefix_max >= opt / 2^(i-1), checked as integers via ceil division.
    const Time slack = opt_value - prefix_max;
    if (slack < 0) return false;
    Time needed;
    if (i - 1 >= 63) {
      needed = opt_value > 0 ? 1 : 0;
    } else {
      const Time mask = (Time{1} << (i - 1)) - 1;
      needed = (opt_value >> (i - 1)) + ((opt_value & mask) != 0 ? 1 : 0);
    }
    if (slack < needed) return false;
  }
  return true;
}

bool check_theorem2(Time greedy_value, Time opt_value, RouterIndex k) {
  if (k < 1 || k > 40)
    throw std::invalid_argument("check_theorem2: k out of supported range");
  // greedy <= (2 - 2^(1-k)) * opt + 3, scaled by 2^(k-1).
  const Time scale = Time{1} << (k - 1);
  return greedy_value * scale <= (2 * scale - 1) * opt_value + 3 * scale;
}

RatioReport ratio_report(const Instance& instance,
                         const std::vector<Policy>& policies,
                         const OptResult& certificate) {
  if (certificate.value <= 0 && !instance.packets.empty())
    throw std::invalid_argument("ratio_report: certificate value must be positive");
  RatioReport report;
  report.certificate_value = certificate.value;
  report.certificate_exact = certificate.exact;
  report.lower_bound = load_lower_bound(instance);
  for (const Policy& policy : policies) {
    RatioRow row;
    row.policy = policy.name;
    row.max_flow = flow_times(instance, simulate(instance, policy)).max;
    row.ratio = instance.packets.empty()
                    ? 1.0
                    : static_cast<double>(row.max_flow) /
                          static_cast<double>(certificate.value);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace lineforward
