#include "agecode/codec.hpp"

#include <algorithm>
#include <string>

namespace agecode {
namespace {

void check_codec_field(const GaloisField& field) {
  if (field.order() > 256) {
    throw UsageError("codec payloads are byte vectors; field order must be <= 256");
  }
}

// y += c * x over the field, element-wise.
void axpy(std::vector<uint8_t>& y, uint8_t c, std::span<const uint8_t> x,
          const GaloisField& field) {
  for (size_t i = 0; i < y.size(); ++i) {
    y[i] = static_cast<uint8_t>(GaloisField::add(y[i], field.mul(c, x[i])));
  }
}

// Draw a coefficient vector uniformly over GF(q)^k \ {0}.
std::vector<uint8_t> draw_nonzero_coeffs(size_t k, const GaloisField& field, Rng& rng) {
  std::vector<uint8_t> coeffs(k);
  for (;;) {
    bool all_zero = true;
    for (auto& c : coeffs) {
      c = static_cast<uint8_t>(rng.field_element(field.order()));
      all_zero &= (c == 0);
    }
    if (!all_zero) return coeffs;
  }
}

}  // namespace

CodedPacket encode(uint32_t generation_id, std::span<const SourcePacket> bucket,
                   const GaloisField& field, Rng& rng) {
  check_codec_field(field);
  if (bucket.empty()) throw UsageError("encode: empty bucket");
  const size_t payload_len = bucket.front().payload.size();
  for (const auto& p : bucket) {
    if (p.payload.size() != payload_len) {
      throw UsageError("encode: bucket payloads must have equal length");
    }
  }

  CodedPacket out;
  out.generation_id = generation_id;
  out.coeffs = draw_nonzero_coeffs(bucket.size(), field, rng);
  out.payload.assign(payload_len, 0);
  out.freshest_stamp = 0;
  for (size_t i = 0; i < bucket.size(); ++i) {
    axpy(out.payload, out.coeffs[i], bucket[i].payload, field);
    out.freshest_stamp = std::max(out.freshest_stamp, bucket[i].stamp);
  }
  return out;
}

CodedPacket recode(std::span<const CodedPacket> stored, const GaloisField& field,
                   Rng& rng) {
  check_codec_field(field);
  if (stored.empty()) throw UsageError("recode: nothing stored");
  const auto& first = stored.front();
  for (const auto& p : stored) {
    if (p.generation_id != first.generation_id) {
      throw UsageError("recode: mixed generations");
    }
    if (p.coeffs.size() != first.coeffs.size() ||
        p.payload.size() != first.payload.size()) {
      throw UsageError("recode: stored packets must have equal lengths");
    }
  }

  const auto weights = draw_nonzero_coeffs(stored.size(), field, rng);
  CodedPacket out;
  out.generation_id = first.generation_id;
  out.coeffs.assign(first.coeffs.size(), 0);
  out.payload.assign(first.payload.size(), 0);
  out.freshest_stamp = 0;
  for (size_t i = 0; i < stored.size(); ++i) {
    axpy(out.coeffs, weights[i], stored[i].coeffs, field);
    axpy(out.payload, weights[i], stored[i].payload, field);
    out.freshest_stamp = std::max(out.freshest_stamp, stored[i].freshest_stamp);
  }
  return out;
}

Decoder::Decoder(uint32_t generation_id, size_t generation_size, size_t payload_len,
                 const GaloisField* field)
    : generation_id_(generation_id),
      generation_size_(generation_size),
      payload_len_(payload_len),
      field_(field) {
  check_codec_field(*field);
  if (generation_size == 0) throw UsageError("Decoder: generation size must be >= 1");
}

size_t Decoder::ingest(const CodedPacket& packet) {
  if (packet.generation_id != generation_id_) {
    throw UsageError("Decoder::ingest: wrong generation (" +
                     std::to_string(packet.generation_id) + " vs " +
                     std::to_string(generation_id_) + ")");
  }
  if (packet.coeffs.size() != generation_size_ ||
      packet.payload.size() != payload_len_) {
    throw UsageError("Decoder::ingest: coefficient/payload length mismatch");
  }
  freshest_stamp_ = std::max(freshest_stamp_, packet.freshest_stamp);

  std::vector<uint8_t> coeffs = packet.coeffs;
  std::vector<uint8_t> payload = packet.payload;

  // Eliminate against existing pivots.
  for (const Row& row : rows_) {
    const uint8_t c = coeffs[row.pivot];
    if (c != 0) {
      axpy(coeffs, c, row.coeffs, *field_);
      axpy(payload, c, row.payload, *field_);
    }
  }
  const auto pivot_it = std::find_if(coeffs.begin(), coeffs.end(),
                                     [](uint8_t c) { return c != 0; });
  if (pivot_it == coeffs.end()) return rank();  // dependent row

  // Normalize so the pivot is 1, then clear that column from stored rows.
  const size_t pivot = static_cast<size_t>(pivot_it - coeffs.begin());
  const uint8_t scale = field_->inv(*pivot_it);
  for (auto& c : coeffs) c = static_cast<uint8_t>(field_->mul(scale, c));
  for (auto& b : payload) b = static_cast<uint8_t>(field_->mul(scale, b));
  for (Row& row : rows_) {
    const uint8_t c = row.coeffs[pivot];
    if (c != 0) {
      axpy(row.coeffs, c, coeffs, *field_);
      axpy(row.payload, c, payload, *field_);
    }
  }

  Row row{pivot, std::move(coeffs), std::move(payload)};
  rows_.insert(std::upper_bound(rows_.begin(), rows_.end(), row,
                                [](const Row& a, const Row& b) { return a.pivot < b.pivot; }),
               std::move(row));
  return rank();
}

std::vector<std::vector<uint8_t>> Decoder::solve() const {
  if (!complete()) {
    throw NotReadyError("Decoder::solve: rank " + std::to_string(rank()) + " of " +
                        std::to_string(generation_size_));
  }
  // Full rank in reduced row-echelon form means the coefficient matrix is the
  // identity: payload rows are the originals, already in bucket order.
  std::vector<std::vector<uint8_t>> out;
  out.reserve(rows_.size());
  for (const Row& row : rows_) out.push_back(row.payload);
  return out;
}

void Decoder::widen(size_t new_generation_size) {
  if (new_generation_size < generation_size_) {
    throw UsageError("Decoder::widen: generations cannot shrink");
  }
  generation_size_ = new_generation_size;
  for (Row& row : rows_) row.coeffs.resize(new_generation_size, 0);
}

}  // namespace agecode
