#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agecode/field.hpp"
#include "agecode/rng.hpp"

namespace agecode {

/// A source packet admitted into the coding bucket: its generation slot and
/// its data. Payload bytes must be valid field elements (always true for
/// GF(256); masked inputs for smaller fields).
struct SourcePacket {
  uint64_t stamp = 0;
  std::vector<uint8_t> payload;
};

/// One coded transmission: a random linear combination of the packets of a
/// single generation. The coefficient vector is carried explicitly.
struct CodedPacket {
  uint32_t generation_id = 0;
  std::vector<uint8_t> coeffs;    // length = generation size at encode time
  std::vector<uint8_t> payload;   // length = payload length of the run
  uint64_t freshest_stamp = 0;    // newest source stamp combined in
};

/// Random combination of the bucket: coefficients uniform over GF(q)^k with
/// the all-zero vector rejected and redrawn, payload the coefficient-weighted
/// sum. Requires a nonempty bucket of equal-length payloads and field order
/// <= 256 (payload bytes are field symbols).
CodedPacket encode(uint32_t generation_id, std::span<const SourcePacket> bucket,
                   const GaloisField& field, Rng& rng);

/// Recombination at an intermediate node: a random GF(q) combination of the
/// stored coded packets (same generation, equal coefficient lengths). The
/// output lies in the span of the inputs.
CodedPacket recode(std::span<const CodedPacket> stored, const GaloisField& field,
                   Rng& rng);

/// Incremental Gaussian elimination over one generation. Rows are kept in
/// reduced row-echelon form so that a full-rank matrix is the identity and
/// solving is a copy.
class Decoder {
 public:
  Decoder(uint32_t generation_id, size_t generation_size, size_t payload_len,
          const GaloisField* field);

  /// Row-reduce a packet into the state. Returns the new rank; the rank
  /// increases exactly when the packet is independent of the stored rows.
  size_t ingest(const CodedPacket& packet);

  size_t rank() const { return rows_.size(); }
  size_t generation_size() const { return generation_size_; }
  uint32_t generation_id() const { return generation_id_; }
  bool complete() const { return rank() == generation_size_; }

  /// Newest source stamp seen across all ingested packets.
  uint64_t freshest_stamp() const { return freshest_stamp_; }

  /// Original payloads in bucket order. NotReadyError unless complete().
  std::vector<std::vector<uint8_t>> solve() const;

  /// Grow the generation (open-bucket mode): pad stored coefficient rows
  /// with zeros up to the new size. The rank is unchanged.
  void widen(size_t new_generation_size);

 private:
  struct Row {
    size_t pivot;
    std::vector<uint8_t> coeffs;
    std::vector<uint8_t> payload;
  };

  uint32_t generation_id_;
  size_t generation_size_;
  size_t payload_len_;
  const GaloisField* field_;
  uint64_t freshest_stamp_ = 0;
  std::vector<Row> rows_;  // sorted by pivot column
};

}  // namespace agecode
