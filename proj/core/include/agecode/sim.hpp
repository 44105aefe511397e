#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "agecode/aoi_tracker.hpp"
#include "agecode/scenario.hpp"
#include "agecode/topology.hpp"

namespace agecode {

/// First 5% of the horizon, at least 1000 slots, discarded from all metrics.
inline uint64_t default_warmup(uint64_t horizon) {
  const uint64_t five_percent = horizon / 20;
  return five_percent > 1000 ? five_percent : 1000;
}

struct SimOptions {
  /// Replace the default warmup (testing/debug).
  std::optional<uint64_t> warmup_override;
  /// Keep the full per-slot age trace (small horizons only).
  bool record_trace = false;
  /// Protocol level: deterministic arrival slots instead of Bernoulli draws.
  std::optional<std::vector<uint64_t>> scripted_arrivals;
  /// Protocol level: check every decoded generation against the source data.
  bool verify_decode = true;
};

/// Everything measured in one simulation run. AoI quantities follow the
/// AoiTracker conventions (headline values boundary-sampled, raw values from
/// the verbatim recursion).
struct RunMetrics {
  uint64_t horizon = 0;
  uint64_t warmup = 0;
  uint64_t seed = 0;

  double avg_aoi = 0;
  double avg_aoi_raw = 0;
  double avg_aoi_se = 0;
  double peak_aoi = 0;
  double peak_aoi_raw = 0;
  double peak_aoi_se = 0;
  uint64_t peak_count = 0;
  uint64_t measured_slots = 0;

  double throughput = 0;       // delivered packets per slot over [warmup, horizon)
  double throughput_se = 0;
  double busy_service_rate = 0;  // delivered packets per slot of service occupancy

  double d1 = 0;   // empirical delay costs from ordered inter-delivery times
  double d2 = 0;
  double dinf = 0;

  uint64_t admitted = 0;             // whole run, including warmup
  uint64_t delivered = 0;            // whole run
  uint64_t in_system_at_end = 0;     // queued + in bucket/service, undelivered
  uint64_t generations_decoded = 0;  // protocol level
  uint64_t dependent_receptions = 0; // received but rank-neutral (protocol)
  uint64_t redundant_receptions = 0; // received after their generation decoded
  uint64_t link_transmissions = 0;   // protocol level
  uint64_t decode_failures = 0;      // decoded payloads differing from source
  double mean_generation_size = 0;   // protocol level

  /// Histogram of generation transmission counts (protocol level): entry x is
  /// the number of decoded generations whose first-transmission-to-decode
  /// span was x slots.
  std::vector<uint64_t> generation_slots_histogram;

  std::vector<AoiTracker::TraceSample> trace;  // when requested
};

/// Bernoulli/G/1 queue at slot resolution: Bernoulli(lambda) arrivals, one
/// server, i.i.d. per-packet service (X + D) / (L K) slots with X negative
/// binomial. Time is internally subdivided into L*K ticks per slot (which
/// must therefore be an integer) so services are exact.
///
/// Requires a stable scenario (utilization < 1, unless lambda is 0) and an
/// end-to-end rate <= 1. StabilityError / DomainError / UsageError otherwise.
RunMetrics run_queue_sim(const ScenarioParams& params, uint64_t horizon,
                         uint64_t seed, const SimOptions& options = {});

/// Full protocol: real arrivals and admission, a coding bucket flushed by
/// end-to-end acknowledgements, random linear coding at the source, recoding
/// relays, per-link erasures, Gaussian elimination at the destination.
/// The network argument overrides params.network.
RunMetrics run_protocol_sim(const ScenarioParams& params, const ErasureNetwork& net,
                            uint64_t horizon, uint64_t seed,
                            const SimOptions& options = {});

/// Delay cost of ordered delivery times: packets delivered at the same time
/// form one bucket; position j within a bucket has mean inter-delivery time
/// m_j over buckets, and the cost is
///   d(p) = (1/L) [ sum_j w_j m_j^p ]^(1/p),
/// with w_j the fraction of packets at position j. The first bucket's
/// inter-delivery time is measured from -feedback_delay. p = infinity gives
/// max_j m_j / L. UsageError when empty or p < 1.
double empirical_dp(std::span<const double> delivery_times, double p,
                    double packet_len, double feedback_delay);

}  // namespace agecode
