#pragma once

#include <cstdint>

#include "core/fp.hpp"
#include "core/laurent.hpp"

namespace qtc {

/// Twisted torus: the plane modulo the lattice spanned by a1 = (0, alpha)
/// and a2 = (beta, gamma). Gamma is canonicalized into [0, alpha) at
/// construction, which leaves the lattice unchanged because
/// (beta, gamma + k*alpha) = a2 + k*a1. Hosts n = 2*alpha*beta qudits,
/// two per unit cell.
class TorusSpec {
 public:
  TorusSpec(PrimeModulus p, int64_t alpha, int64_t beta, int64_t gamma_raw);

  PrimeModulus prime() const { return p_; }
  int64_t alpha() const { return alpha_; }
  int64_t beta() const { return beta_; }
  int64_t gamma() const { return gamma_; }
  int64_t cells() const { return alpha_ * beta_; }
  int64_t n() const { return 2 * alpha_ * beta_; }

  friend bool operator==(const TorusSpec& a, const TorusSpec& b) {
    return a.p_ == b.p_ && a.alpha_ == b.alpha_ && a.beta_ == b.beta_ && a.gamma_ == b.gamma_;
  }

 private:
  PrimeModulus p_;
  int64_t alpha_;
  int64_t beta_;
  int64_t gamma_;
};

/// Named alias for the constructor, matching the operation vocabulary.
inline TorusSpec canonicalize_gamma(PrimeModulus p, int64_t alpha, int64_t beta,
                                    int64_t gamma_raw) {
  return TorusSpec(p, alpha, beta, gamma_raw);
}

/// Unique cell representative, i in [0, beta), j in [0, alpha).
struct SiteIndex {
  int64_t i;
  int64_t j;
  friend bool operator==(const SiteIndex&, const SiteIndex&) = default;
};

/// The two qudits of a unit cell.
enum class EdgeType : int { first = 1, second = 2 };

/// Floor modulus into [0, m).
inline int64_t floor_mod(int64_t v, int64_t m) {
  int64_t r = v % m;
  return r < 0 ? r + m : r;
}

/// Canonical representative of the lattice coset of e.
SiteIndex canonicalize(Exponent e, const TorusSpec& t);

/// Cell-major, edge-minor column layout: 2*(i*alpha + j) + (kind - 1).
int64_t qudit_index(SiteIndex s, EdgeType et, const TorusSpec& t);

/// True iff e is a lattice point (equivalent to the origin).
bool in_lattice(Exponent e, const TorusSpec& t);

}  // namespace qtc
