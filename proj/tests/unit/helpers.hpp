#pragma once

#include "core/laurent.hpp"
#include "core/parser.hpp"
#include "core/rng.hpp"

namespace qtc::testing {

inline LaurentPoly random_laurent(SplitMix64& rng, PrimeModulus p, int max_terms, int max_exp) {
  LaurentPoly out(p);
  int terms = 1 + int(rng.below(uint64_t(max_terms)));
  for (int i = 0; i < terms; ++i) {
    int64_t x = int64_t(rng.below(uint64_t(2 * max_exp + 1))) - max_exp;
    int64_t y = int64_t(rng.below(uint64_t(2 * max_exp + 1))) - max_exp;
    out.add_term({x, y}, 1 + int64_t(rng.below(p.value() - 1)));
  }
  return out;
}

inline LaurentPoly random_nonzero_laurent(SplitMix64& rng, PrimeModulus p, int max_terms,
                                          int max_exp) {
  for (;;) {
    LaurentPoly out = random_laurent(rng, p, max_terms, max_exp);
    if (!out.is_zero()) return out;
  }
}

inline LaurentPoly poly(const char* text, int64_t p) { return parse_poly(text, PrimeModulus(p)); }

}  // namespace qtc::testing
