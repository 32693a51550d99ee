#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/fp.hpp"
#include "core/lattice.hpp"
#include "core/laurent.hpp"

namespace qtc {

/// Exponent tuple for up to three variables (x, y, t). Unused slots stay 0.
using Mono = std::array<int32_t, 3>;

inline int32_t total_degree(const Mono& m) { return m[0] + m[1] + m[2]; }

inline Mono mono_mul(const Mono& a, const Mono& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline bool mono_divides(const Mono& a, const Mono& b) {
  return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2];
}

inline Mono mono_div(const Mono& b, const Mono& a) {
  return {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
  return {std::max(a[0], b[0]), std::max(a[1], b[1]), std::max(a[2], b[2])};
}

enum class OrderKind { grevlex, lex };

/// Global monomial order on 2 or 3 variables. Both kinds are total,
/// multiplicative and well-founded, so either is valid for dimension
/// counting; grevlex is the default for speed.
class MonomialOrder {
 public:
  MonomialOrder(OrderKind kind, int nvars);

  /// <0 if a < b, 0 if equal, >0 if a > b.
  int compare(const Mono& a, const Mono& b) const;
  bool less(const Mono& a, const Mono& b) const { return compare(a, b) < 0; }

  OrderKind kind() const { return kind_; }
  int nvars() const { return nvars_; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  OrderKind kind_;
  int nvars_;
};

struct RingTerm {
  Mono mono;
  uint32_t coeff;
};

/// Polynomial with nonnegative exponents over Z_p, terms kept sorted with
/// the leading term first under the attached monomial order.
class RingPoly {
 public:
  RingPoly(PrimeModulus mod, MonomialOrder order) : mod_(mod), order_(order) {}

  /// Embeds a Laurent polynomial whose exponents are already nonnegative.
  static RingPoly from_laurent(const LaurentPoly& a, MonomialOrder order);
  static RingPoly constant(PrimeModulus mod, MonomialOrder order, int64_t c);
  static RingPoly monomial(PrimeModulus mod, MonomialOrder order, Mono m, int64_t c);

  bool is_zero() const { return terms_.empty(); }
  const RingTerm& leading() const;
  const std::vector<RingTerm>& terms() const { return terms_; }
  PrimeModulus modulus() const { return mod_; }
  const MonomialOrder& order() const { return order_; }

  void add_term(Mono m, int64_t coeff);
  RingPoly& operator+=(const RingPoly& rhs);
  RingPoly& operator-=(const RingPoly& rhs);
  friend RingPoly operator*(const RingPoly& a, const RingPoly& b);
  friend bool operator==(const RingPoly& a, const RingPoly& b);

  /// this minus (c * x^m * g); the workhorse of division steps.
  void sub_scaled(const RingPoly& g, Mono m, uint32_t c);

  void make_monic();

  std::string str() const;  // debug rendering in x, y, t

 private:
  PrimeModulus mod_;
  MonomialOrder order_;
  std::vector<RingTerm> terms_;  // sorted descending, no zero coeffs
};

/// Reduced Groebner basis: generators monic, inter-reduced, sorted by
/// ascending leading monomial.
class GroebnerBasis {
 public:
  const std::vector<RingPoly>& generators() const { return gens_; }
  const MonomialOrder& order() const { return order_; }
  PrimeModulus modulus() const { return mod_; }

 private:
  GroebnerBasis(PrimeModulus mod, MonomialOrder order, std::vector<RingPoly> gens)
      : mod_(mod), order_(order), gens_(std::move(gens)) {}
  friend GroebnerBasis buchberger(std::vector<RingPoly> gens, MonomialOrder order);

  PrimeModulus mod_;
  MonomialOrder order_;
  std::vector<RingPoly> gens_;
};

/// Buchberger's algorithm with the normal (degree) pair strategy and the
/// product criterion. Zero generators are dropped; an all-zero input is
/// rejected (errc::empty_ideal). Output is the reduced basis, hence
/// deterministic for a fixed order.
GroebnerBasis buchberger(std::vector<RingPoly> gens, MonomialOrder order);

/// Remainder of multivariate division by the basis; idempotent, and no term
/// of the result is divisible by any leading monomial of G.
RingPoly normal_form(RingPoly a, const GroebnerBasis& G);

/// normal_form(base^e, G) by square-and-multiply with reduction after every
/// product, so the cost is O(log e) quotient-ring multiplications.
RingPoly power_mod(const RingPoly& base, uint64_t e, const GroebnerBasis& G);
RingPoly power_mod_var(int var, uint64_t e, const GroebnerBasis& G);

/// Number of standard monomials, or nullopt when the quotient ring is
/// infinite-dimensional (some variable has no pure power among the leading
/// monomials).
std::optional<uint64_t> quotient_dimension(const GroebnerBasis& G);

/// Logical dimension on a twisted torus:
///   k = 2 dim Z_p[x,y] / <f', g', y^alpha - 1, x^beta y^gamma - 1>
/// with f', g' the unit-normalized generators and gamma already reduced
/// into [0, alpha). The boundary relations make x and y invertible in the
/// quotient, so the value agrees with the Laurent-ring quotient. The
/// boundary monomials are reduced by power_mod before the final basis
/// computation, keeping the cost independent of alpha and beta.
int64_t k_twisted(const LaurentPoly& f, const LaurentPoly& g, const TorusSpec& torus);

/// Ceiling of k over all tori: 2 dim of the Laurent quotient by <f, g>,
/// computed in three variables with the relation x*y*t = 1 adjoining the
/// inverse of xy. nullopt when infinite (f, g share a factor).
std::optional<int64_t> k_max(const LaurentPoly& f, const LaurentPoly& g);

/// True iff k_max is finite, i.e. f and g are coprime in the Laurent ring.
bool check_topological_order(const LaurentPoly& f, const LaurentPoly& g);

/// Holds the Groebner basis of <f', g'> so that many boundary choices for
/// the same stabilizer pair amortize the expensive step.
class KTwistedEvaluator {
 public:
  KTwistedEvaluator(const LaurentPoly& f, const LaurentPoly& g);
  int64_t k(int64_t alpha, int64_t beta, int64_t gamma) const;
  const GroebnerBasis& base() const { return base_; }

 private:
  PrimeModulus mod_;
  GroebnerBasis base_;
};

}  // namespace qtc
