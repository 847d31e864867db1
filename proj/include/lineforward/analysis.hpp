#pragma once

#include "lineforward/core.hpp"
#include "lineforward/offline.hpp"
#include "lineforward/policies.hpp"

namespace lineforward {

// Backlog comparison of two schedules for one instance. For every router i
// and step t, a(i,t) / g(i,t) count alive packets that still need a hop on
// router i under the reference / online schedule; delta = g - a. Rows cover
// t = 0 .. horizon inclusive, where horizon is the later completion time of
// the two schedules (all counts are zero there).
class DeltaProfile {
 public:
  DeltaProfile(RouterIndex k, Time horizon)
      : k_(k),
        horizon_(horizon),
        a_(static_cast<std::size_t>(k) + 1,
           std::vector<Time>(static_cast<std::size_t>(horizon) + 1, 0)),
        g_(a_) {}

  RouterIndex k() const { return k_; }
  Time horizon() const { return horizon_; }

  Time a(RouterIndex i, Time t) const { return a_.at(i).at(t); }
  Time g(RouterIndex i, Time t) const { return g_.at(i).at(t); }
  Time delta(RouterIndex i, Time t) const { return g(i, t) - a(i, t); }

  std::vector<Time>& a_row(RouterIndex i) { return a_.at(i); }
  std::vector<Time>& g_row(RouterIndex i) { return g_.at(i); }

 private:
  RouterIndex k_;
  Time horizon_;
  std::vector<std::vector<Time>> a_;
  std::vector<std::vector<Time>> g_;
};

// Builds the profile from two complete traces. Both must validate; the
// reference must additionally be zealous.
DeltaProfile delta_profile(const Instance& instance, const Trace& online,
                           const Trace& reference);

// The leftmost router's backlog never differs between two zealous schedules.
bool check_lemma1(const DeltaProfile& profile);

struct Lemma2Violation {
  RouterIndex router = 0;
  Time t = 0;
  Time required = 0;  // packets of sufficient priority the claim demands
  Time found = 0;
};

// Whenever delta grows on router i while the router to its left is no further
// behind, the reference must be holding enough high-priority packets that
// still need router i-1. Lengths must lie in {1, 2}.
std::vector<Lemma2Violation> check_lemma2(const Instance& instance,
                                          const DeltaProfile& profile,
                                          const Trace& reference);

// Prefix maxima of delta are bounded by (1 - 2^(1-i)) * opt_value.
bool check_lemma3(const DeltaProfile& profile, Time opt_value);

// greedy_value <= (2 - 2^(1-k)) * opt_value + 3, checked in exact integers.
bool check_theorem2(Time greedy_value, Time opt_value, RouterIndex k);

struct RatioRow {
  std::string policy;
  Time max_flow = 0;
  double ratio = 0.0;
};

struct RatioReport {
  std::vector<RatioRow> rows;  // input policy order
  Time certificate_value = 0;
  bool certificate_exact = false;
  Time lower_bound = 0;
};

// Simulates each policy on the instance and compares against a certificate
// (typically brute_force_opt output or a reference-schedule value).
RatioReport ratio_report(const Instance& instance,
                         const std::vector<Policy>& policies,
                         const OptResult& certificate);

}  // namespace lineforward
