#include "support/random_instances.hpp"

#include <algorithm>

namespace lineforward::testing {

namespace {

// Modulo reduction is slightly biased, which is fine for test data and keeps
// the stream identical on every standard library.
std::uint64_t pick(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

}  // namespace

Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
  Instance instance;
  instance.k = static_cast<RouterIndex>(1 + pick(rng, spec.max_k));
  const int count = static_cast<int>(pick(rng, spec.max_packets + 1));
  for (int i = 0; i < count; ++i) {
    Packet p;
    p.id = i;
    if (!instance.packets.empty() && pick(rng, 100) < static_cast<std::uint64_t>(
                                                          spec.duplicate_percent)) {
      const Packet& model =
          instance.packets[pick(rng, instance.packets.size())];
      p.release = model.release;
      p.origin = model.origin;
      p.length = model.length;
    } else {
      p.release = static_cast<Time>(pick(rng, spec.max_release + 1));
      p.origin = static_cast<RouterIndex>(1 + pick(rng, instance.k));
      const int room = std::min(spec.max_length, instance.k - p.origin + 1);
      p.length = static_cast<int>(1 + pick(rng, room));
    }
    instance.packets.push_back(p);
  }
  return instance;
}

}  // namespace lineforward::testing
