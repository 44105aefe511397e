#include <cmath>
#include <deque>
#include <string>

#include "agecode/rng.hpp"
#include "agecode/sim.hpp"
#include "sim_internal.hpp"

namespace agecode {

RunMetrics run_queue_sim(const ScenarioParams& params, uint64_t horizon,
                         uint64_t seed, const SimOptions& options) {
  const ResolvedScenario rs = resolve(params);
  if (rs.rate > 1.0) {
    throw DomainError(
        "queue-level service draws need a per-slot success probability; "
        "the network rate is " + std::to_string(rs.rate) +
        " > 1 (simulate such networks at the protocol level)");
  }
  if (rs.lambda > 0 && rs.utilization >= 1.0 - 1e-9) {
    throw StabilityError("utilization " + std::to_string(rs.utilization) +
                         " >= 1: queue-level simulation would not converge");
  }
  // L*K ticks per slot make the fractional service (X + D) / (L K) exact.
  const double tps_real = params.packet_len * params.bucket_size;
  const auto tps = static_cast<uint64_t>(std::llround(tps_real));
  if (tps < 1 || std::abs(tps_real - static_cast<double>(tps)) > 1e-9) {
    throw UsageError("queue-level simulation needs L*K to be a whole number of ticks, got " +
                     std::to_string(tps_real));
  }
  const uint64_t warmup = options.warmup_override.value_or(default_warmup(horizon));
  if (horizon <= warmup) {
    throw UsageError("horizon " + std::to_string(horizon) +
                     " does not reach past the warmup of " + std::to_string(warmup) +
                     " slots");
  }

  Rng rng(seed);
  AoiTracker tracker(horizon, warmup, options.record_trace);
  internal::RateBatches deliveries(horizon, warmup);
  internal::PositionalDelayCost delay_cost_acc;

  std::deque<uint64_t> queue;  // stamps (arrival slots) of waiting packets
  bool in_flight = false;
  uint64_t in_flight_stamp = 0;
  uint64_t in_flight_ticks = 0;
  uint64_t completion_tick = 0;
  uint64_t server_free_tick = 0;

  RunMetrics metrics;
  metrics.horizon = horizon;
  metrics.warmup = warmup;
  metrics.seed = seed;
  uint64_t busy_ticks = 0;
  double previous_delivery = -static_cast<double>(params.feedback_delay);

  for (uint64_t t = 0; t < horizon; ++t) {
    // Arrivals at the slot boundary.
    if (rs.lambda > 0 && rng.bernoulli(rs.lambda)) {
      queue.push_back(t);
      ++metrics.admitted;
    }

    // Deliver every service completing during this slot; start services as
    // the server frees up.
    std::optional<uint64_t> freshest;
    for (;;) {
      if (in_flight) {
        if (completion_tick / tps > t) break;
        ++metrics.delivered;
        deliveries.add(t);
        busy_ticks += in_flight_ticks;
        freshest = in_flight_stamp;
        const double at = static_cast<double>(completion_tick) / static_cast<double>(tps);
        if (t >= warmup) {
          delay_cost_acc.add_bucket(at - previous_delivery, 1);
        }
        previous_delivery = at;
        in_flight = false;
      } else if (!queue.empty()) {
        const uint64_t arrival_tick = queue.front() * tps;
        const uint64_t start = std::max(server_free_tick, arrival_tick);
        const uint64_t service_ticks =
            rng.negbin_trials(rs.rate, params.bucket_size) + params.feedback_delay;
        in_flight_stamp = queue.front();
        queue.pop_front();
        completion_tick = start + service_ticks;
        server_free_tick = completion_tick;
        in_flight_ticks = service_ticks;
        in_flight = true;
      } else {
        break;
      }
    }

    tracker.step(freshest);
  }

  const AoiTracker::Summary aoi = tracker.summarize();
  metrics.avg_aoi = aoi.avg_aoi;
  metrics.avg_aoi_raw = aoi.avg_aoi_raw;
  metrics.avg_aoi_se = aoi.avg_aoi_se;
  metrics.peak_aoi = aoi.peak_aoi;
  metrics.peak_aoi_raw = aoi.peak_aoi_raw;
  metrics.peak_aoi_se = aoi.peak_aoi_se;
  metrics.peak_count = aoi.peak_count;
  metrics.measured_slots = aoi.measured_slots;
  metrics.throughput = deliveries.rate();
  metrics.throughput_se = deliveries.rate_se();
  metrics.busy_service_rate =
      busy_ticks > 0 ? static_cast<double>(metrics.delivered) * static_cast<double>(tps) /
                           static_cast<double>(busy_ticks)
                     : 0.0;
  metrics.d1 = delay_cost_acc.cost(1.0, params.packet_len);
  metrics.d2 = delay_cost_acc.cost(2.0, params.packet_len);
  metrics.dinf = delay_cost_acc.cost(std::numeric_limits<double>::infinity(),
                                     params.packet_len);
  metrics.in_system_at_end = queue.size() + (in_flight ? 1 : 0);
  metrics.trace = tracker.trace();
  return metrics;
}

}  // namespace agecode
