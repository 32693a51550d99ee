#include "core/csscode.hpp"

namespace qtc {

CodeInstance::CodeInstance(LaurentPoly f_, LaurentPoly g_, TorusSpec torus_)
    : f(std::move(f_)), g(std::move(g_)), torus(torus_) {
  if (f.is_zero() || g.is_zero()) fail(errc::zero_polynomial, "f and g must be nonzero");
  if (f.modulus() != torus.prime() || g.modulus() != torus.prime())
    fail(errc::modulus_mismatch, "polynomial modulus differs from torus modulus");
}

ParityChecks build_checks(const CodeInstance& c) {
  const TorusSpec& t = c.torus;
  const uint32_t p = t.prime().value();
  const size_t cells = size_t(t.cells());
  const size_t n = size_t(t.n());
  GfpMatrix hx(p, cells, n);
  GfpMatrix hz(p, cells, n);

  for (int64_t ci = 0; ci < t.beta(); ++ci) {
    for (int64_t cj = 0; cj < t.alpha(); ++cj) {
      size_t row = size_t(ci * t.alpha() + cj);
      for (const auto& [e, coef] : c.f.terms()) {
        SiteIndex s = canonicalize({ci + e.x, cj + e.y}, t);
        hx.add_at(row, size_t(qudit_index(s, EdgeType::first, t)), coef);
        SiteIndex sz = canonicalize({ci - e.x, cj - e.y}, t);
        hz.add_at(row, size_t(qudit_index(sz, EdgeType::second, t)), coef);
      }
      for (const auto& [e, coef] : c.g.terms()) {
        SiteIndex s = canonicalize({ci + e.x, cj + e.y}, t);
        hx.add_at(row, size_t(qudit_index(s, EdgeType::second, t)), coef);
        SiteIndex sz = canonicalize({ci - e.x, cj - e.y}, t);
        hz.add_at(row, size_t(qudit_index(sz, EdgeType::first, t)), int64_t(p) - int64_t(coef));
      }
    }
  }
  return {std::move(hx), std::move(hz)};
}

int64_t k_linalg(const CodeInstance& c) {
  ParityChecks pc = build_checks(c);
  return c.n() - int64_t(rank_gfp(pc.hx)) - int64_t(rank_gfp(pc.hz));
}

int32_t max_row_weight(const ParityChecks& pc) {
  int32_t best = 0;
  for (const GfpMatrix* m : {&pc.hx, &pc.hz}) {
    for (size_t r = 0; r < m->rows(); ++r) {
      int32_t w = 0;
      for (uint32_t e : m->row(r)) w += (e != 0);
      best = std::max(best, w);
    }
  }
  return best;
}

}  // namespace qtc
