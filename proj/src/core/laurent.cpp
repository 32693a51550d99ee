#include "core/laurent.hpp"

#include <algorithm>
#include <limits>

namespace qtc {

void LaurentPoly::check_same_modulus(const LaurentPoly& other) const {
  if (mod_ != other.mod_) fail(errc::modulus_mismatch, "polynomials over different Z_p");
}

void LaurentPoly::add_term(Exponent e, int64_t coeff) {
  uint32_t c = residue_mod(coeff, mod_.value());
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = add_mod(it->second, c, mod_.value());
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  check_same_modulus(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  check_same_modulus(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, int64_t(neg_mod(c, mod_.value())));
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same_modulus(b);
  LaurentPoly out(a.mod_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea.x + eb.x, ea.y + eb.y}, mul_mod(ca, cb, a.mod_.value()));
    }
  }
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(mod_);
  for (const auto& [e, c] : terms_) out.add_term(e, int64_t(neg_mod(c, mod_.value())));
  return out;
}

Exponent LaurentPoly::min_exponents() const {
  if (terms_.empty()) fail(errc::zero_polynomial, "zero polynomial has no exponents");
  Exponent m{std::numeric_limits<int64_t>::max(), std::numeric_limits<int64_t>::max()};
  for (const auto& [e, c] : terms_) {
    (void)c;
    m.x = std::min(m.x, e.x);
    m.y = std::min(m.y, e.y);
  }
  return m;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += "+";
    std::string mono;
    auto factor = [&](const char* var, int64_t exp) {
      if (exp == 0) return;
      if (!mono.empty()) mono += "*";
      mono += var;
      if (exp != 1) mono += "^" + std::to_string(exp);
    };
    factor("x", e.x);
    factor("y", e.y);
    if (mono.empty()) {
      out += std::to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += std::to_string(c) + "*" + mono;
    }
  }
  return out;
}

LaurentPoly antipode(const LaurentPoly& a) {
  LaurentPoly out(a.modulus());
  for (const auto& [e, c] : a.terms()) out.add_term({-e.x, -e.y}, c);
  return out;
}

std::pair<LaurentPoly, Exponent> normalize_to_polynomial(const LaurentPoly& a) {
  Exponent shift = a.min_exponents();
  LaurentPoly out(a.modulus());
  for (const auto& [e, c] : a.terms()) out.add_term({e.x - shift.x, e.y - shift.y}, c);
  return {std::move(out), shift};
}

LaurentPoly canonical_unit_form(const LaurentPoly& a) {
  auto [shifted, shift] = normalize_to_polynomial(a);
  (void)shift;
  uint32_t p = a.modulus().value();
  uint32_t lead = shifted.terms().begin()->second;
  if (lead == 1) return shifted;
  uint32_t scale = inv_mod(lead, p);
  LaurentPoly out(a.modulus());
  for (const auto& [e, c] : shifted.terms()) out.add_term(e, mul_mod(c, scale, p));
  return out;
}

std::pair<LaurentPoly, LaurentPoly> make_generalized_pair(PrimeModulus p, FieldElement r1,
                                                          FieldElement r2, FieldElement r3,
                                                          FieldElement r4, int64_t a, int64_t b,
                                                          int64_t c, int64_t d) {
  for (const FieldElement* r : {&r1, &r2, &r3, &r4}) {
    if (r->mod != p) fail(errc::modulus_mismatch, "coefficient modulus differs from p");
    if (r->value == 0) fail(errc::zero_coefficient, "generalized pair requires nonzero r1..r4");
  }
  LaurentPoly f(p), g(p);
  f.add_term({0, 0}, 1);
  f.add_term({1, 0}, r1.value);
  f.add_term({a, b}, r2.value);
  g.add_term({0, 0}, 1);
  g.add_term({0, 1}, r3.value);
  g.add_term({c, d}, r4.value);
  return {std::move(f), std::move(g)};
}

}  // namespace qtc
