#include "core/fp.hpp"

#include "core/rng.hpp"
#include "doctest.h"

using namespace qtc;

TEST_SUITE_BEGIN("fp");

TEST_CASE("prime modulus validation") {
  CHECK(PrimeModulus(2).value() == 2);
  CHECK(PrimeModulus(2147483647).value() == 2147483647u);  // 2^31 - 1 is prime
  CHECK_THROWS_AS(PrimeModulus(1), error);
  CHECK_THROWS_AS(PrimeModulus(0), error);
  CHECK_THROWS_AS(PrimeModulus(4), error);
  CHECK_THROWS_AS(PrimeModulus(91), error);  // 7 * 13
  CHECK_THROWS_AS(PrimeModulus(int64_t(1) << 32), error);
}

TEST_CASE("miller-rabin spot checks") {
  CHECK(is_prime_u32(11));
  CHECK(is_prime_u32(65537));
  CHECK_FALSE(is_prime_u32(65536));
  CHECK_FALSE(is_prime_u32(3215031751u));  // strong pseudoprime to bases 2,3,5,7
  CHECK(is_prime_u32(4294967291u));
}

TEST_CASE("field_inv examples") {
  CHECK(field_inv({1, PrimeModulus(7)}).value == 1);
  CHECK(field_inv({2, PrimeModulus(5)}).value == 3);
  CHECK(field_inv({10, PrimeModulus(11)}).value == 10);
  CHECK_THROWS_AS(field_inv({0, PrimeModulus(7)}), error);
}

TEST_CASE("field axioms exhaustive for small p") {
  for (int64_t p : {2, 3, 5, 7, 11}) {
    PrimeModulus mod(p);
    uint32_t pv = mod.value();
    for (uint32_t a = 0; a < pv; ++a) {
      for (uint32_t b = 0; b < pv; ++b) {
        CHECK(add_mod(a, b, pv) == (a + b) % pv);
        CHECK(mul_mod(a, b, pv) == (a * b) % pv);
        CHECK(sub_mod(add_mod(a, b, pv), b, pv) == a);
        for (uint32_t c = 0; c < pv; ++c) {
          CHECK(mul_mod(a, add_mod(b, c, pv), pv) ==
                add_mod(mul_mod(a, b, pv), mul_mod(a, c, pv), pv));
        }
      }
      if (a != 0) CHECK(mul_mod(a, inv_mod(a, pv), pv) == 1);
    }
  }
}

TEST_CASE("mixed moduli rejected") {
  FieldElement a{1, PrimeModulus(5)};
  FieldElement b{1, PrimeModulus(7)};
  CHECK_THROWS_AS((void)(a + b), error);
  CHECK_THROWS_AS((void)(a * b), error);
}

TEST_CASE("barrett reducer agrees with %") {
  SplitMix64 rng(7);
  for (uint32_t p : {2u, 3u, 11u, 65537u, 2147483647u}) {
    Reducer red(p);
    for (int i = 0; i < 2000; ++i) {
      uint64_t x = rng.next() >> 1;  // below 2^63
      CHECK(red.reduce(x) == x % p);
    }
  }
}

TEST_CASE("residue_mod handles negatives") {
  CHECK(residue_mod(-1, 3) == 2);
  CHECK(residue_mod(-3, 3) == 0);
  CHECK(residue_mod(7, 3) == 1);
}

TEST_SUITE_END();
