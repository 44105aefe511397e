#pragma once

#include <cstdint>
#include <optional>

#include "agecode/analytics.hpp"
#include "agecode/topology.hpp"

namespace agecode {

/// Whether packets may still join a generation after its first transmission.
enum class BucketJoin { closed, open };

/// One experiment configuration. Defaults are the evaluation baseline:
/// L = 1, D = 1, utilization 0.6, a single link with erasure 0.2 (rate 0.8),
/// K = 1, GF(256).
struct ScenarioParams {
  std::optional<double> arrival_prob;         // lambda; exactly one of
  std::optional<double> target_utilization = 0.6;  // rho      these is set
  double admit_prob = 1.0;                    // beta
  uint32_t bucket_size = 1;                   // K
  double packet_len = 1.0;                    // L
  uint32_t feedback_delay = 1;                // D, slots
  ErasureNetwork network = ErasureNetwork::single(0.2);
  uint32_t field_order = 256;                 // q
  uint64_t horizon = 100000;                  // slots per replication
  uint32_t replications = 1;
  uint64_t base_seed = 1;
  BucketJoin bucket_join = BucketJoin::closed;
  bool wait_for_full_bucket = false;
  uint32_t payload_bytes = 16;

  /// ConfigError on malformed parameters; StabilityError for utilization
  /// targets >= 1.
  void validate() const;
};

/// Scenario quantities derived once per run: the end-to-end rate of the
/// network, the admitted arrival probability (resolving a utilization target
/// if one was given), and the matching service model.
struct ResolvedScenario {
  double rate = 0;         // r = end_to_end_rate(network, bucket_size)
  double lambda = 0;       // admitted arrival probability
  ServiceModel model;
  double utilization = 0;  // lambda * E[S]
};

ResolvedScenario resolve(const ScenarioParams& params);

}  // namespace agecode
