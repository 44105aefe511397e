#include "agecode/field.hpp"

#include <array>
#include <bit>
#include <string>

namespace agecode {
namespace {

// Pinned irreducible reduction polynomials, indexed by m for GF(2^m).
// Low-weight standards: e.g. m=8 is the AES polynomial, m=16 the CCITT one.
constexpr std::array<uint32_t, 17> kReductionPoly = {
    0,        // unused
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x89,     // x^7 + x^3 + 1
    0x11B,    // x^8 + x^4 + x^3 + x + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
};

}  // namespace

FieldSpec FieldSpec::for_order(uint32_t q) {
  if (q < 2 || q > 65536 || !std::has_single_bit(q)) {
    throw UsageError("field order must be a power of two in [2, 65536], got " +
                     std::to_string(q));
  }
  const int m = std::countr_zero(q);
  return FieldSpec{q, kReductionPoly[static_cast<size_t>(m)]};
}

uint16_t field_mul(uint16_t a, uint16_t b, const FieldSpec& spec) {
  // Carry-less (polynomial) multiply.
  uint32_t acc = 0;
  uint32_t x = a;
  for (uint32_t y = b; y != 0; y >>= 1) {
    if (y & 1) acc ^= x;
    x <<= 1;
  }
  // Reduce modulo the field polynomial.
  const int m = std::countr_zero(spec.order);
  for (int deg = 31 - std::countl_zero(acc | 1); deg >= m; --deg) {
    if (acc & (1u << deg)) acc ^= spec.reduction_poly << (deg - m);
  }
  return static_cast<uint16_t>(acc);
}

GaloisField::GaloisField(FieldSpec spec) : spec_(FieldSpec::for_order(spec.order)) {
  if (spec.reduction_poly != 0 && spec.reduction_poly != spec_.reduction_poly) {
    // Only the pinned polynomial per order is supported; anything else would
    // silently change every coded byte on the wire.
    throw UsageError("unsupported reduction polynomial for this field order");
  }
  const uint32_t q = spec_.order;
  log_.assign(q, 0);
  exp_.assign(2 * (q - 1), 0);

  if (q == 2) {  // GF(2): the only nonzero element is its own generator
    exp_[0] = exp_[1] = 1;
    log_[1] = 0;
    return;
  }

  // Find a generator: an element whose powers enumerate all q-1 nonzero
  // elements. 2 works for most of the pinned polynomials, 3 for AES's.
  for (uint32_t g = 2; g < q; ++g) {
    uint32_t value = 1;
    uint32_t steps = 0;
    do {
      value = field_mul(static_cast<uint16_t>(value), static_cast<uint16_t>(g), spec_);
      ++steps;
    } while (value != 1 && steps < q);
    if (steps == q - 1) {
      value = 1;
      for (uint32_t i = 0; i < q - 1; ++i) {
        exp_[i] = static_cast<uint16_t>(value);
        exp_[i + q - 1] = static_cast<uint16_t>(value);
        log_[value] = static_cast<uint16_t>(i);
        value = field_mul(static_cast<uint16_t>(value), static_cast<uint16_t>(g), spec_);
      }
      return;
    }
  }
  throw Error("no generator found; reduction polynomial is not irreducible");
}

}  // namespace agecode
