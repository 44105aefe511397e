#pragma once

// Shared accumulators for the two simulators. Internal to core/src.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "agecode/errors.hpp"

namespace agecode::internal {

// Streaming form of the positional delay cost behind empirical_dp: deliveries
// that share a delivery instant form a bucket; this tracks, per position
// within a bucket, the mean inter-delivery time.
class PositionalDelayCost {
 public:
  // Record one bucket: `delta` is its inter-delivery time (first position),
  // remaining positions contribute zeros.
  void add_bucket(double delta, size_t bucket_packets) {
    if (sums_.size() < bucket_packets) sums_.resize(bucket_packets, {0.0, 0});
    sums_[0].first += delta;
    for (size_t j = 0; j < bucket_packets; ++j) sums_[j].second += 1;
    total_ += bucket_packets;
  }

  uint64_t total_packets() const { return total_; }

  double cost(double p, double packet_len) const {
    if (total_ == 0) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(p)) {
      double worst = 0;
      for (const auto& [sum, count] : sums_) {
        if (count > 0) worst = std::max(worst, sum / static_cast<double>(count));
      }
      return worst / packet_len;
    }
    double acc = 0;
    for (const auto& [sum, count] : sums_) {
      if (count == 0) continue;
      const double mean = sum / static_cast<double>(count);
      const double weight = static_cast<double>(count) / static_cast<double>(total_);
      acc += weight * std::pow(mean, p);
    }
    return std::pow(acc, 1.0 / p) / packet_len;
  }

 private:
  std::vector<std::pair<double, uint64_t>> sums_;  // per position: (sum of deltas, packets)
  uint64_t total_ = 0;
};

// Per-batch event counts over [warmup, horizon), for rate estimates with a
// batch-means standard error.
class RateBatches {
 public:
  RateBatches(uint64_t horizon, uint64_t warmup, uint32_t batches = 32)
      : warmup_(warmup), span_(horizon - warmup) {
    const uint64_t wanted = std::max<uint32_t>(batches, 1);
    width_ = std::max<uint64_t>(1, (span_ + wanted - 1) / wanted);
    counts_.assign((span_ + width_ - 1) / width_, 0);
  }

  void add(uint64_t slot, uint64_t events = 1) {
    if (slot < warmup_) return;
    counts_[static_cast<size_t>((slot - warmup_) / width_)] += events;
    total_ += events;
  }

  uint64_t total() const { return total_; }

  double rate() const { return static_cast<double>(total_) / static_cast<double>(span_); }

  double rate_se() const {
    if (counts_.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    // Batch rates, each over its own width (the last batch may be short).
    double mean_sq = 0;
    const double overall = rate();
    for (size_t i = 0; i < counts_.size(); ++i) {
      const uint64_t slots = i + 1 < counts_.size() ? width_ : span_ - width_ * (counts_.size() - 1);
      const double diff = static_cast<double>(counts_[i]) / static_cast<double>(slots) - overall;
      mean_sq += diff * diff;
    }
    const auto n = static_cast<double>(counts_.size());
    return std::sqrt(mean_sq / (n - 1) / n);
  }

 private:
  uint64_t warmup_;
  uint64_t span_;
  uint64_t width_ = 1;
  uint64_t total_ = 0;
  std::vector<uint64_t> counts_;
};

}  // namespace agecode::internal
