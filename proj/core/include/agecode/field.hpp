#pragma once

#include <cstdint>
#include <vector>

#include "agecode/errors.hpp"

namespace agecode {

/// Parameters of a binary extension field GF(2^m), 1 <= m <= 16.
///
/// One reduction polynomial is pinned per field size (see field.cpp); the
/// default field is GF(256) under x^8 + x^4 + x^3 + x + 1 (0x11B).
struct FieldSpec {
  uint32_t order = 256;           // q = 2^m
  uint32_t reduction_poly = 0x11B;

  /// Spec with the pinned reduction polynomial for the given order.
  /// Throws UsageError unless q is a power of two in [2, 65536].
  static FieldSpec for_order(uint32_t q);
};

/// Table-driven arithmetic in GF(2^m). Addition is XOR; multiplication and
/// inversion go through log/antilog tables built from a generator element.
class GaloisField {
 public:
  explicit GaloisField(FieldSpec spec);

  uint32_t order() const { return spec_.order; }
  const FieldSpec& spec() const { return spec_; }

  static uint16_t add(uint16_t a, uint16_t b) { return a ^ b; }

  uint16_t mul(uint16_t a, uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  /// Multiplicative inverse; UsageError on zero.
  uint16_t inv(uint16_t a) const {
    if (a == 0) throw UsageError("GaloisField::inv: zero has no inverse");
    return exp_[spec_.order - 1 - log_[a]];
  }

  uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }

 private:
  FieldSpec spec_;
  std::vector<uint16_t> log_;   // log_[x] for x != 0
  std::vector<uint16_t> exp_;   // exp_[i] for i in [0, 2(q-1)), doubled to skip a mod
};

/// Product in GF(q): carry-less multiply followed by reduction modulo the
/// spec's polynomial. Slower than GaloisField::mul but table-free; also the
/// routine used to build the tables.
uint16_t field_mul(uint16_t a, uint16_t b, const FieldSpec& spec);

}  // namespace agecode
