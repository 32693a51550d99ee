#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "core/fp.hpp"

namespace qtc {

/// Exponent pair of a monomial x^x y^y; either entry may be negative.
/// Lexicographic order (x first) fixes term iteration and rendering.
struct Exponent {
  int64_t x = 0;
  int64_t y = 0;
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

/// Sparse bivariate Laurent polynomial over Z_p. Stored coefficients are
/// always nonzero residues in [1, p); a polynomial with no terms is zero.
class LaurentPoly {
 public:
  explicit LaurentPoly(PrimeModulus mod) : mod_(mod) {}

  static LaurentPoly monomial(PrimeModulus mod, Exponent e, int64_t coeff) {
    LaurentPoly r(mod);
    r.add_term(e, coeff);
    return r;
  }

  PrimeModulus modulus() const { return mod_; }
  const std::map<Exponent, uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  uint32_t coefficient(Exponent e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Accumulates coeff (any integer) into the term at e, dropping the term
  /// if the sum vanishes mod p.
  void add_term(Exponent e, int64_t coeff);

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.mod_ == b.mod_ && a.terms_ == b.terms_;
  }

  /// Componentwise minimum of all exponents; requires a nonzero polynomial.
  Exponent min_exponents() const;

  /// Canonical text form, re-parseable by parse_poly.
  std::string str() const;

 private:
  void check_same_modulus(const LaurentPoly& other) const;

  PrimeModulus mod_;
  std::map<Exponent, uint32_t> terms_;
};

/// The antipode map x^n y^m -> x^-n y^-m, coefficients unchanged.
LaurentPoly antipode(const LaurentPoly& a);

/// Shifts a by the unit x^-i y^-j so both minimum exponents become zero.
/// Returns the shifted polynomial and the applied shift (min exponents of a).
std::pair<LaurentPoly, Exponent> normalize_to_polynomial(const LaurentPoly& a);

/// Representative of the orbit of a under multiplication by units
/// c * x^i y^j: min exponents shifted to zero, then scaled so the
/// lexicographically smallest exponent pair has coefficient 1. Idempotent.
LaurentPoly canonical_unit_form(const LaurentPoly& a);

/// The weight-3 pair f = 1 + r1 x + r2 x^a y^b, g = 1 + r3 y + r4 x^c y^d.
/// Exponent collisions merge coefficients and may shorten the polynomials.
std::pair<LaurentPoly, LaurentPoly> make_generalized_pair(PrimeModulus p, FieldElement r1,
                                                          FieldElement r2, FieldElement r3,
                                                          FieldElement r4, int64_t a, int64_t b,
                                                          int64_t c, int64_t d);

}  // namespace qtc
