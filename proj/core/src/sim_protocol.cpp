#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <string>

#include "agecode/codec.hpp"
#include "agecode/rng.hpp"
#include "agecode/sim.hpp"
#include "sim_internal.hpp"

namespace agecode {
namespace {

// Coefficient-only row echelon form; relays use it to keep at most one
// stored packet per degree of freedom.
class RankTracker {
 public:
  explicit RankTracker(const GaloisField* field) : field_(field) {}

  size_t rank() const { return rows_.size(); }

  void reset() { rows_.clear(); }

  void widen(size_t width) {
    for (auto& [pivot, coeffs] : rows_) coeffs.resize(width, 0);
  }

  // True (and keeps the row) when the coefficients are independent of the
  // rows seen so far.
  bool add(std::vector<uint8_t> coeffs) {
    for (const auto& [pivot, row] : rows_) {
      const uint8_t c = coeffs[pivot];
      if (c == 0) continue;
      for (size_t i = 0; i < coeffs.size(); ++i) {
        coeffs[i] = static_cast<uint8_t>(GaloisField::add(coeffs[i], field_->mul(c, row[i])));
      }
    }
    size_t pivot = coeffs.size();
    for (size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == coeffs.size()) return false;
    const uint8_t scale = field_->inv(coeffs[pivot]);
    for (auto& c : coeffs) c = static_cast<uint8_t>(field_->mul(scale, c));
    rows_.emplace_back(pivot, std::move(coeffs));
    return true;
  }

 private:
  const GaloisField* field_;
  std::vector<std::pair<size_t, std::vector<uint8_t>>> rows_;
};

struct Link {
  size_t from;
  size_t to;
  double erasure;
};

struct RelayState {
  explicit RelayState(const GaloisField* field) : tracker(field) {}

  uint32_t generation = 0;
  std::vector<CodedPacket> stored;  // independent rows, equal widths
  RankTracker tracker;

  void reset_for(uint32_t gen) {
    generation = gen;
    stored.clear();
    tracker.reset();
  }

  void match_width(CodedPacket& incoming) {
    const size_t held = stored.empty() ? 0 : stored.front().coeffs.size();
    if (incoming.coeffs.size() > held) {
      for (auto& p : stored) p.coeffs.resize(incoming.coeffs.size(), 0);
      tracker.widen(incoming.coeffs.size());
    } else if (incoming.coeffs.size() < held) {
      incoming.coeffs.resize(held, 0);
    }
  }
};

}  // namespace

RunMetrics run_protocol_sim(const ScenarioParams& params, const ErasureNetwork& net,
                            uint64_t horizon, uint64_t seed,
                            const SimOptions& options) {
  ScenarioParams scenario = params;
  scenario.network = net;
  const ResolvedScenario rs = resolve(scenario);
  if (params.field_order > 256) {
    throw UsageError("protocol payloads are byte vectors; q must be <= 256");
  }
  if (params.packet_len != 1.0) {
    throw UsageError("the protocol level models one transmission per link per slot; "
                     "packet_len must be 1 (other values are analytic only)");
  }
  const uint64_t warmup = options.warmup_override.value_or(default_warmup(horizon));
  if (horizon <= warmup) {
    throw UsageError("horizon " + std::to_string(horizon) +
                     " does not reach past the warmup of " + std::to_string(warmup) +
                     " slots");
  }

  // Nodes: 0 is the source, then one relay per intermediate hop of each
  // path, destination last. Links in path-major order.
  std::vector<Link> links;
  size_t next_node = 1;
  for (const auto& hops : net.paths) {
    size_t from = 0;
    for (size_t h = 0; h + 1 < hops.size(); ++h) {
      links.push_back({from, next_node, hops[h]});
      from = next_node++;
    }
    links.push_back({from, SIZE_MAX, hops.back()});  // patched to dest below
  }
  const size_t dest = next_node;
  for (auto& link : links) {
    if (link.to == SIZE_MAX) link.to = dest;
  }

  const GaloisField field(FieldSpec::for_order(params.field_order));
  Rng rng(seed);
  AoiTracker tracker(horizon, warmup, options.record_trace);
  internal::RateBatches deliveries(horizon, warmup);
  internal::PositionalDelayCost delay_cost_acc;

  std::vector<RelayState> relays;
  relays.reserve(dest > 1 ? dest - 1 : 0);
  for (size_t i = 1; i < dest; ++i) relays.emplace_back(&field);

  // Source.
  std::deque<SourcePacket> queue;
  std::vector<SourcePacket> bucket;
  bool generation_open = false;
  uint32_t generation_id = 0;
  uint64_t first_tx_slot = 0;
  bool ack_pending = false;
  uint64_t ack_slot = 0;
  size_t ack_width = 0;

  // Destination.
  uint32_t last_decoded_generation = 0;
  std::unique_ptr<Decoder> decoder;

  RunMetrics metrics;
  metrics.horizon = horizon;
  metrics.warmup = warmup;
  metrics.seed = seed;
  uint64_t busy_slots = 0;
  double previous_decode = -static_cast<double>(params.feedback_delay);
  const double raw_arrival = rs.lambda / params.admit_prob;
  size_t next_scripted = 0;

  const auto draw_payload = [&] {
    std::vector<uint8_t> payload(params.payload_bytes);
    for (auto& b : payload) b = static_cast<uint8_t>(rng.field_element(params.field_order));
    return payload;
  };

  std::vector<std::pair<size_t, CodedPacket>> inbox;
  for (uint64_t t = 0; t < horizon; ++t) {
    // 1. Arrival and admission at the slot boundary.
    bool admitted_now = false;
    if (options.scripted_arrivals) {
      const auto& script = *options.scripted_arrivals;
      if (next_scripted < script.size() && script[next_scripted] == t) {
        admitted_now = true;
        ++next_scripted;
      }
    } else if (raw_arrival > 0 && rng.bernoulli(raw_arrival)) {
      admitted_now = params.admit_prob >= 1.0 || rng.bernoulli(params.admit_prob);
    }
    if (admitted_now) {
      ++metrics.admitted;
      SourcePacket packet{t, draw_payload()};
      if (params.bucket_join == BucketJoin::open && generation_open &&
          bucket.size() < params.bucket_size && !ack_pending) {
        bucket.push_back(std::move(packet));  // joins the in-flight generation
      } else {
        queue.push_back(std::move(packet));
      }
    }

    // 2. Acknowledgement: flush the decoded prefix, requeue any packets that
    // joined too late to be part of the decode.
    if (ack_pending && ack_slot == t) {
      for (size_t i = bucket.size(); i > ack_width;) {
        --i;
        queue.push_front(std::move(bucket[i]));
      }
      bucket.clear();
      generation_open = false;
      ack_pending = false;
    }

    // 3. Refill the bucket and open the next generation.
    if (!generation_open &&
        queue.size() >= (params.wait_for_full_bucket ? params.bucket_size : 1)) {
      const size_t take = std::min<size_t>(params.bucket_size, queue.size());
      for (size_t i = 0; i < take; ++i) {
        bucket.push_back(std::move(queue.front()));
        queue.pop_front();
      }
      ++generation_id;
      generation_open = true;
      first_tx_slot = t;
    }

    // 4. Transmissions: source encodes over the bucket, relays recode their
    // stored rows. Receptions land at the end of the slot, so a relay
    // forwards what it held at the start of this slot.
    inbox.clear();
    for (const Link& link : links) {
      CodedPacket packet;
      if (link.from == 0) {
        if (!generation_open) continue;
        packet = encode(generation_id, bucket, field, rng);
      } else {
        RelayState& relay = relays[link.from - 1];
        if (relay.stored.empty()) continue;
        packet = recode(relay.stored, field, rng);
      }
      ++metrics.link_transmissions;
      if (!rng.bernoulli(link.erasure)) inbox.emplace_back(link.to, std::move(packet));
    }

    // 5. Receptions.
    std::optional<uint64_t> freshest;
    for (auto& [node, packet] : inbox) {
      if (node != dest) {
        RelayState& relay = relays[node - 1];
        if (packet.generation_id < relay.generation) continue;  // stale
        if (packet.generation_id > relay.generation) relay.reset_for(packet.generation_id);
        relay.match_width(packet);
        if (relay.tracker.add(packet.coeffs)) relay.stored.push_back(std::move(packet));
        continue;
      }

      if (packet.generation_id <= last_decoded_generation) {
        ++metrics.redundant_receptions;  // kept transmitting during the ACK flight
        continue;
      }
      if (!decoder || decoder->generation_id() != packet.generation_id) {
        decoder = std::make_unique<Decoder>(packet.generation_id, packet.coeffs.size(),
                                            params.payload_bytes, &field);
      } else if (packet.coeffs.size() > decoder->generation_size()) {
        decoder->widen(packet.coeffs.size());
      } else if (packet.coeffs.size() < decoder->generation_size()) {
        packet.coeffs.resize(decoder->generation_size(), 0);
      }
      const size_t before = decoder->rank();
      decoder->ingest(packet);
      if (decoder->rank() == before) ++metrics.dependent_receptions;
      if (!decoder->complete()) continue;

      // Full rank: decode, update the age process, schedule the ACK.
      const size_t size = decoder->generation_size();
      metrics.delivered += size;
      metrics.generations_decoded += 1;
      deliveries.add(t, size);
      const uint64_t span = t - first_tx_slot + 1;
      busy_slots += span + params.feedback_delay;
      if (metrics.generation_slots_histogram.size() <= span) {
        metrics.generation_slots_histogram.resize(span + 1, 0);
      }
      metrics.generation_slots_histogram[span] += 1;
      if (options.verify_decode) {
        const auto decoded = decoder->solve();
        for (size_t i = 0; i < size; ++i) {
          if (decoded[i] != bucket[i].payload) ++metrics.decode_failures;
        }
      }
      if (t >= warmup) {
        delay_cost_acc.add_bucket(static_cast<double>(t) - previous_decode, size);
      }
      previous_decode = static_cast<double>(t);
      const uint64_t stamp = decoder->freshest_stamp();
      freshest = freshest ? std::max(*freshest, stamp) : stamp;
      last_decoded_generation = packet.generation_id;
      decoder.reset();
      ack_pending = true;
      ack_slot = t + params.feedback_delay + 1;
      ack_width = size;
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
      busy_slots > 0 ? static_cast<double>(metrics.delivered) / static_cast<double>(busy_slots)
                     : 0.0;
  metrics.d1 = delay_cost_acc.cost(1.0, params.packet_len);
  metrics.d2 = delay_cost_acc.cost(2.0, params.packet_len);
  metrics.dinf = delay_cost_acc.cost(std::numeric_limits<double>::infinity(),
                                     params.packet_len);
  size_t undelivered_in_bucket = bucket.size();
  if (ack_pending) undelivered_in_bucket -= std::min(ack_width, bucket.size());
  metrics.in_system_at_end = queue.size() + undelivered_in_bucket;
  metrics.mean_generation_size =
      metrics.generations_decoded > 0
          ? static_cast<double>(metrics.delivered) /
                static_cast<double>(metrics.generations_decoded)
          : 0.0;
  metrics.trace = tracker.trace();
  return metrics;
}

}  // namespace agecode
