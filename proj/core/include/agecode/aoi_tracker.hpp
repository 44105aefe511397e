#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "agecode/errors.hpp"

namespace agecode {

/// Slot-by-slot age-of-information process at a destination.
///
/// The recursion is applied verbatim: with no update in slot t the age grows
/// by one, A(t+1) = A(t) + 1; an update carrying generation stamp g gives
/// A(t+1) = min(t - g, A(t)). A peak sample A(t) is recorded whenever
/// A(t+1) <= A(t), i.e. in every update slot.
///
/// Two averages are reported. avg_aoi_raw is the plain time average of the
/// recursion above. avg_aoi = avg_aoi_raw + 1 samples the age at slot
/// boundaries (an update completing in slot t is one slot old by the time
/// slot t+1 is observed); that is the convention under which the Ber/G/1
/// closed forms hold, so it is the headline number. Peaks shift the same way.
class AoiTracker {
 public:
  struct Summary {
    double avg_aoi = 0;        // boundary-sampled (raw + 1)
    double avg_aoi_raw = 0;
    double avg_aoi_se = 0;
    double peak_aoi = 0;       // boundary-sampled (raw + 1)
    double peak_aoi_raw = 0;
    double peak_aoi_se = 0;
    uint64_t peak_count = 0;
    uint64_t measured_slots = 0;
  };

  struct TraceSample {
    uint64_t slot;
    uint64_t age;   // A(t), the age during the slot
    bool updated;
  };

  /// Measurements cover slots in [warmup, horizon) once a delivery has been
  /// seen; the ramp before the first delivery is excluded. Standard errors
  /// come from batch means over `batches` equal slot windows.
  AoiTracker(uint64_t horizon, uint64_t warmup, bool record_trace = false,
             uint32_t batches = 32);

  /// Advance one slot. `freshest_stamp`, when present, is the newest
  /// generation stamp delivered during this slot; it must not exceed the
  /// current slot index.
  void step(std::optional<uint64_t> freshest_stamp);

  uint64_t slot() const { return slot_; }
  uint64_t age() const { return age_; }
  bool saw_delivery() const { return saw_delivery_; }

  Summary summarize() const;
  const std::vector<TraceSample>& trace() const { return trace_; }

 private:
  struct Batch {
    double age_sum = 0;
    uint64_t age_count = 0;
    double peak_sum = 0;
    uint64_t peak_count = 0;
  };

  size_t batch_index(uint64_t t) const;

  uint64_t horizon_;
  uint64_t warmup_;
  uint64_t batch_width_;
  uint64_t slot_ = 0;
  uint64_t age_ = 0;
  bool saw_delivery_ = false;
  bool record_trace_;
  std::vector<Batch> batches_;
  std::vector<TraceSample> trace_;
};

}  // namespace agecode
