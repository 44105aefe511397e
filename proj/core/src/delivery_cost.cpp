#include <cmath>

#include "agecode/sim.hpp"
#include "sim_internal.hpp"

namespace agecode {

double empirical_dp(std::span<const double> delivery_times, double p,
                    double packet_len, double feedback_delay) {
  if (delivery_times.empty()) throw UsageError("empirical_dp: no deliveries");
  if (!(p >= 1)) throw UsageError("empirical_dp: p must be >= 1");
  if (!(packet_len > 0)) throw UsageError("empirical_dp: packet_len must be positive");

  internal::PositionalDelayCost acc;
  double previous = -feedback_delay;
  size_t i = 0;
  while (i < delivery_times.size()) {
    const double at = delivery_times[i];
    if (at < previous) throw UsageError("empirical_dp: delivery times must be ordered");
    size_t j = i;
    while (j < delivery_times.size() && delivery_times[j] == at) ++j;
    acc.add_bucket(at - previous, j - i);
    previous = at;
    i = j;
  }
  return acc.cost(p, packet_len);
}

}  // namespace agecode
