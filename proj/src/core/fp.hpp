#pragma once

#include <cstdint>

#include "core/error.hpp"

namespace qtc {

/// Deterministic Miller-Rabin, exact for all 32-bit inputs.
bool is_prime_u32(uint32_t n);

/// Prime modulus of a coefficient field. Validated once at construction,
/// then copied freely. Supported range: 2 <= p < 2^31.
class PrimeModulus {
 public:
  explicit PrimeModulus(int64_t p);
  uint32_t value() const noexcept { return p_; }
  friend bool operator==(PrimeModulus a, PrimeModulus b) noexcept { return a.p_ == b.p_; }
  friend bool operator!=(PrimeModulus a, PrimeModulus b) noexcept { return a.p_ != b.p_; }

 private:
  uint32_t p_;
};

inline uint32_t add_mod(uint32_t a, uint32_t b, uint32_t p) {
  uint32_t s = a + b;
  return s >= p ? s - p : s;
}

inline uint32_t sub_mod(uint32_t a, uint32_t b, uint32_t p) { return a >= b ? a - b : a + p - b; }

inline uint32_t neg_mod(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

inline uint32_t mul_mod(uint32_t a, uint32_t b, uint32_t p) {
  return uint32_t(uint64_t(a) * b % p);
}

/// Least nonnegative residue of a possibly negative value.
inline uint32_t residue_mod(int64_t v, uint32_t p) {
  int64_t r = v % int64_t(p);
  if (r < 0) r += p;
  return uint32_t(r);
}

uint32_t pow_mod(uint32_t a, uint64_t e, uint32_t p);

/// Multiplicative inverse in Z_p; rejects 0 (errc::zero_inverse).
uint32_t inv_mod(uint32_t a, uint32_t p);

/// Field element tagged with its modulus. Binary operations refuse to mix
/// distinct moduli instead of coercing.
struct FieldElement {
  uint32_t value;
  PrimeModulus mod;

  FieldElement(int64_t v, PrimeModulus m) : value(residue_mod(v, m.value())), mod(m) {}

  friend FieldElement operator+(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a, FieldElement b);
  friend FieldElement operator*(FieldElement a, FieldElement b);
  friend bool operator==(FieldElement a, FieldElement b);
};

FieldElement field_inv(FieldElement a);

/// Barrett-style reducer for a fixed modulus; valid for inputs below 2^63.
/// Avoids the hardware divide in elimination inner loops.
class Reducer {
 public:
  explicit Reducer(uint32_t p) : p_(p), m_(~uint64_t(0) / p) {}

  uint32_t reduce(uint64_t x) const {
    uint64_t q = uint64_t((static_cast<unsigned __int128>(x) * m_) >> 64);
    uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return uint32_t(r);
  }

  uint32_t p() const { return p_; }

 private:
  uint32_t p_;
  uint64_t m_;
};

}  // namespace qtc
