#include "agecode/aoi_tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace agecode {

AoiTracker::AoiTracker(uint64_t horizon, uint64_t warmup, bool record_trace,
                       uint32_t batches)
    : horizon_(horizon), warmup_(warmup), record_trace_(record_trace) {
  if (horizon <= warmup) {
    throw UsageError("horizon " + std::to_string(horizon) +
                     " leaves no slots after warmup " + std::to_string(warmup));
  }
  const uint64_t span = horizon - warmup;
  const uint64_t wanted = std::max<uint32_t>(batches, 1);
  batch_width_ = std::max<uint64_t>(1, (span + wanted - 1) / wanted);
  batches_.resize((span + batch_width_ - 1) / batch_width_);
}

size_t AoiTracker::batch_index(uint64_t t) const {
  return static_cast<size_t>((t - warmup_) / batch_width_);
}

void AoiTracker::step(std::optional<uint64_t> freshest_stamp) {
  const uint64_t t = slot_;
  const bool measured = t >= warmup_ && saw_delivery_;
  if (measured) {
    Batch& b = batches_[batch_index(t)];
    b.age_sum += static_cast<double>(age_);
    b.age_count += 1;
  }

  uint64_t next_age = age_ + 1;
  bool updated = false;
  if (freshest_stamp) {
    if (*freshest_stamp > t) {
      throw UsageError("delivery stamp " + std::to_string(*freshest_stamp) +
                       " lies in the future of slot " + std::to_string(t));
    }
    next_age = std::min(t - *freshest_stamp, age_);
    updated = true;
    if (measured) {
      Batch& b = batches_[batch_index(t)];
      b.peak_sum += static_cast<double>(age_);
      b.peak_count += 1;
    }
  }

  if (record_trace_) trace_.push_back({t, age_, updated});
  if (updated) saw_delivery_ = true;
  age_ = next_age;
  slot_ += 1;
}

AoiTracker::Summary AoiTracker::summarize() const {
  Summary out;

  double age_sum = 0;
  uint64_t age_count = 0;
  double peak_sum = 0;
  uint64_t peak_count = 0;
  for (const Batch& b : batches_) {
    age_sum += b.age_sum;
    age_count += b.age_count;
    peak_sum += b.peak_sum;
    peak_count += b.peak_count;
  }
  out.measured_slots = age_count;
  out.peak_count = peak_count;

  if (age_count == 0) {
    if (!saw_delivery_) {
      // Nothing ever arrived: the age is the pure ramp A(t) = t.
      out.avg_aoi_raw = (static_cast<double>(warmup_) + static_cast<double>(slot_) - 1) / 2.0;
      out.avg_aoi = out.avg_aoi_raw + 1.0;
    } else {
      out.avg_aoi_raw = out.avg_aoi = std::numeric_limits<double>::quiet_NaN();
    }
    out.avg_aoi_se = std::numeric_limits<double>::quiet_NaN();
    out.peak_aoi_raw = out.peak_aoi = std::numeric_limits<double>::quiet_NaN();
    out.peak_aoi_se = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  out.avg_aoi_raw = age_sum / static_cast<double>(age_count);
  out.avg_aoi = out.avg_aoi_raw + 1.0;

  // Batch-means standard error, over batches that saw data.
  double mean_sq = 0;
  uint32_t used = 0;
  for (const Batch& b : batches_) {
    if (b.age_count == 0) continue;
    const double diff = b.age_sum / static_cast<double>(b.age_count) - out.avg_aoi_raw;
    mean_sq += diff * diff;
    ++used;
  }
  out.avg_aoi_se = used > 1 ? std::sqrt(mean_sq / (used - 1) / used)
                            : std::numeric_limits<double>::quiet_NaN();

  if (peak_count == 0) {
    out.peak_aoi_raw = out.peak_aoi = std::numeric_limits<double>::quiet_NaN();
    out.peak_aoi_se = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.peak_aoi_raw = peak_sum / static_cast<double>(peak_count);
  out.peak_aoi = out.peak_aoi_raw + 1.0;
  double peak_sq = 0;
  uint32_t peak_used = 0;
  for (const Batch& b : batches_) {
    if (b.peak_count == 0) continue;
    const double diff = b.peak_sum / static_cast<double>(b.peak_count) - out.peak_aoi_raw;
    peak_sq += diff * diff;
    ++peak_used;
  }
  out.peak_aoi_se = peak_used > 1 ? std::sqrt(peak_sq / (peak_used - 1) / peak_used)
                                  : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace agecode
