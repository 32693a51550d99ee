#include "core/lattice.hpp"

namespace qtc {

TorusSpec::TorusSpec(PrimeModulus p, int64_t alpha, int64_t beta, int64_t gamma_raw) : p_(p) {
  if (alpha < 1 || beta < 1) fail(errc::invalid_argument, "torus requires alpha, beta >= 1");
  alpha_ = alpha;
  beta_ = beta;
  gamma_ = floor_mod(gamma_raw, alpha);
}

SiteIndex canonicalize(Exponent e, const TorusSpec& t) {
  int64_t i = floor_mod(e.x, t.beta());
  int64_t q = (e.x - i) / t.beta();
  int64_t j = floor_mod(e.y - q * t.gamma(), t.alpha());
  return {i, j};
}

int64_t qudit_index(SiteIndex s, EdgeType et, const TorusSpec& t) {
  return 2 * (s.i * t.alpha() + s.j) + (static_cast<int>(et) - 1);
}

bool in_lattice(Exponent e, const TorusSpec& t) {
  SiteIndex s = canonicalize(e, t);
  return s.i == 0 && s.j == 0;
}

}  // namespace qtc
