#include "core/fp.hpp"

namespace qtc {

namespace {

uint64_t pow_mod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = static_cast<unsigned __int128>(r) * a % m;
    a = static_cast<unsigned __int128>(a) * a % m;
    e >>= 1;
  }
  return r;
}

bool miller_rabin(uint64_t n, uint64_t a) {
  if (a % n == 0) return true;
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  uint64_t x = pow_mod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = static_cast<unsigned __int128>(x) * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  // Bases {2,7,61} are a witness set for every n < 4,759,123,141.
  for (uint64_t a : {2ull, 7ull, 61ull}) {
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(int64_t p) {
  if (p < 2 || p > 0x7fffffff) fail(errc::invalid_argument, "modulus out of range [2, 2^31)");
  if (!is_prime_u32(uint32_t(p))) fail(errc::invalid_argument, "modulus must be prime");
  p_ = uint32_t(p);
}

uint32_t pow_mod(uint32_t a, uint64_t e, uint32_t p) {
  uint32_t r = 1 % p;
  uint32_t base = a % p;
  while (e) {
    if (e & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return r;
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  a %= p;
  if (a == 0) fail(errc::zero_inverse, "zero has no multiplicative inverse");
  // Extended Euclid; p prime so gcd is always 1.
  int64_t t = 0, new_t = 1;
  int64_t r = p, new_r = a;
  while (new_r != 0) {
    int64_t q = r / new_r;
    int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return uint32_t(t);
}

static void check_same(PrimeModulus a, PrimeModulus b) {
  if (a != b) fail(errc::modulus_mismatch, "field elements from different Z_p");
}

FieldElement operator+(FieldElement a, FieldElement b) {
  check_same(a.mod, b.mod);
  return {int64_t(add_mod(a.value, b.value, a.mod.value())), a.mod};
}

FieldElement operator-(FieldElement a, FieldElement b) {
  check_same(a.mod, b.mod);
  return {int64_t(sub_mod(a.value, b.value, a.mod.value())), a.mod};
}

FieldElement operator*(FieldElement a, FieldElement b) {
  check_same(a.mod, b.mod);
  return {int64_t(mul_mod(a.value, b.value, a.mod.value())), a.mod};
}

bool operator==(FieldElement a, FieldElement b) {
  check_same(a.mod, b.mod);
  return a.value == b.value;
}

FieldElement field_inv(FieldElement a) {
  return {int64_t(inv_mod(a.value, a.mod.value())), a.mod};
}

}  // namespace qtc
