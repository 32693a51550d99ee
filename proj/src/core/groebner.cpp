#include "core/groebner.hpp"

#include <algorithm>
#include <queue>

namespace qtc {

MonomialOrder::MonomialOrder(OrderKind kind, int nvars) : kind_(kind), nvars_(nvars) {
  if (nvars != 2 && nvars != 3) fail(errc::invalid_argument, "order supports 2 or 3 variables");
}

int MonomialOrder::compare(const Mono& a, const Mono& b) const {
  if (kind_ == OrderKind::lex) {
    for (int i = 0; i < nvars_; ++i) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }
  // grevlex: higher total degree wins; ties go to the smaller exponent in
  // the last variable where they differ.
  int32_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (int i = nvars_ - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

RingPoly RingPoly::from_laurent(const LaurentPoly& a, MonomialOrder order) {
  RingPoly out(a.modulus(), order);
  for (const auto& [e, c] : a.terms()) {
    if (e.x < 0 || e.y < 0)
      fail(errc::invalid_argument, "laurent polynomial must be normalized first");
    out.add_term({int32_t(e.x), int32_t(e.y), 0}, c);
  }
  return out;
}

RingPoly RingPoly::constant(PrimeModulus mod, MonomialOrder order, int64_t c) {
  RingPoly out(mod, order);
  out.add_term({0, 0, 0}, c);
  return out;
}

RingPoly RingPoly::monomial(PrimeModulus mod, MonomialOrder order, Mono m, int64_t c) {
  RingPoly out(mod, order);
  out.add_term(m, c);
  return out;
}

const RingTerm& RingPoly::leading() const {
  if (terms_.empty()) fail(errc::zero_polynomial, "zero polynomial has no leading term");
  return terms_.front();
}

void RingPoly::add_term(Mono m, int64_t coeff) {
  uint32_t c = residue_mod(coeff, mod_.value());
  if (c == 0) return;
  // binary search for the slot (terms descending)
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [&](const RingTerm& t, const Mono& key) {
                               return order_.compare(t.mono, key) > 0;
                             });
  if (it != terms_.end() && it->mono == m) {
    it->coeff = add_mod(it->coeff, c, mod_.value());
    if (it->coeff == 0) terms_.erase(it);
  } else {
    terms_.insert(it, RingTerm{m, c});
  }
}

RingPoly& RingPoly::operator+=(const RingPoly& rhs) {
  for (const auto& t : rhs.terms_) add_term(t.mono, t.coeff);
  return *this;
}

RingPoly& RingPoly::operator-=(const RingPoly& rhs) {
  for (const auto& t : rhs.terms_) add_term(t.mono, int64_t(neg_mod(t.coeff, mod_.value())));
  return *this;
}

RingPoly operator*(const RingPoly& a, const RingPoly& b) {
  RingPoly out(a.mod_, a.order_);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      out.add_term(mono_mul(ta.mono, tb.mono), mul_mod(ta.coeff, tb.coeff, a.mod_.value()));
    }
  }
  return out;
}

bool operator==(const RingPoly& a, const RingPoly& b) {
  if (a.mod_ != b.mod_ || a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  }
  return true;
}

void RingPoly::sub_scaled(const RingPoly& g, Mono m, uint32_t c) {
  uint32_t p = mod_.value();
  // merge: this - c * x^m * g, both term lists descending
  std::vector<RingTerm> out;
  out.reserve(terms_.size() + g.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j >= g.terms_.size()) {
      out.push_back(terms_[i++]);
      continue;
    }
    Mono gm = mono_mul(g.terms_[j].mono, m);
    uint32_t gc = neg_mod(mul_mod(g.terms_[j].coeff, c, p), p);
    if (i >= terms_.size()) {
      if (gc != 0) out.push_back(RingTerm{gm, gc});
      ++j;
      continue;
    }
    int cmp = order_.compare(terms_[i].mono, gm);
    if (cmp > 0) {
      out.push_back(terms_[i++]);
    } else if (cmp < 0) {
      if (gc != 0) out.push_back(RingTerm{gm, gc});
      ++j;
    } else {
      uint32_t s = add_mod(terms_[i].coeff, gc, p);
      if (s != 0) out.push_back(RingTerm{terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
}

void RingPoly::make_monic() {
  if (terms_.empty()) return;
  uint32_t lead = terms_.front().coeff;
  if (lead == 1) return;
  uint32_t inv = inv_mod(lead, mod_.value());
  for (auto& t : terms_) t.coeff = mul_mod(t.coeff, inv, mod_.value());
}

std::string RingPoly::str() const {
  if (terms_.empty()) return "0";
  static const char* names[3] = {"x", "y", "t"};
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += "+";
    std::string mono;
    for (int v = 0; v < 3; ++v) {
      if (t.mono[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (t.mono[v] != 1) mono += "^" + std::to_string(t.mono[v]);
    }
    if (mono.empty())
      out += std::to_string(t.coeff);
    else if (t.coeff == 1)
      out += mono;
    else
      out += std::to_string(t.coeff) + "*" + mono;
  }
  return out;
}

namespace {

// Full reduction against a generator list (not necessarily a basis yet).
RingPoly reduce_full(RingPoly h, const std::vector<RingPoly>& gens) {
  RingPoly remainder(h.modulus(), h.order());
  while (!h.is_zero()) {
    const RingTerm lead = h.leading();
    bool divided = false;
    for (const RingPoly& g : gens) {
      if (g.is_zero()) continue;
      if (mono_divides(g.leading().mono, lead.mono)) {
        uint32_t c = mul_mod(lead.coeff, inv_mod(g.leading().coeff, h.modulus().value()),
                             h.modulus().value());
        h.sub_scaled(g, mono_div(lead.mono, g.leading().mono), c);
        divided = true;
        break;
      }
    }
    if (!divided) {
      remainder.add_term(lead.mono, lead.coeff);
      RingPoly single(h.modulus(), h.order());
      single.add_term(lead.mono, lead.coeff);
      h -= single;
    }
  }
  return remainder;
}

RingPoly s_poly(const RingPoly& f, const RingPoly& g) {
  uint32_t p = f.modulus().value();
  Mono l = mono_lcm(f.leading().mono, g.leading().mono);
  // (lcm/LM(f)) * f / LC(f) - (lcm/LM(g)) * g / LC(g), built as two scaled
  // subtractions from zero
  RingPoly out(f.modulus(), f.order());
  out.sub_scaled(f, mono_div(l, f.leading().mono), neg_mod(inv_mod(f.leading().coeff, p), p));
  out.sub_scaled(g, mono_div(l, g.leading().mono), inv_mod(g.leading().coeff, p));
  return out;
}

struct PairEntry {
  int32_t degree;
  uint32_t i, j;
  friend bool operator>(const PairEntry& a, const PairEntry& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    if (a.i != b.i) return a.i > b.i;
    return a.j > b.j;
  }
};

}  // namespace

GroebnerBasis buchberger(std::vector<RingPoly> gens, MonomialOrder order) {
  std::vector<RingPoly> work;
  PrimeModulus mod(2);
  bool have_mod = false;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!(g.order() == order)) fail(errc::invalid_argument, "generator order mismatch");
    if (have_mod && g.modulus() != mod) fail(errc::modulus_mismatch, "generators over different Z_p");
    mod = g.modulus();
    have_mod = true;
    g.make_monic();
    work.push_back(std::move(g));
  }
  if (!have_mod) fail(errc::empty_ideal, "all generators are zero");

  std::priority_queue<PairEntry, std::vector<PairEntry>, std::greater<PairEntry>> pairs;
  auto push_pairs = [&](uint32_t upto) {
    for (uint32_t i = 0; i < upto; ++i) {
      const Mono& a = work[i].leading().mono;
      const Mono& b = work[upto].leading().mono;
      // product criterion: coprime leading monomials reduce to zero
      Mono l = mono_lcm(a, b);
      if (l == mono_mul(a, b)) continue;
      pairs.push(PairEntry{total_degree(l), i, upto});
    }
  };
  for (uint32_t i = 1; i < work.size(); ++i) push_pairs(i);

  while (!pairs.empty()) {
    PairEntry e = pairs.top();
    pairs.pop();
    RingPoly r = reduce_full(s_poly(work[e.i], work[e.j]), work);
    if (r.is_zero()) continue;
    r.make_monic();
    work.push_back(std::move(r));
    push_pairs(uint32_t(work.size() - 1));
  }

  // minimalize: drop generators whose leading monomial is divisible by
  // another generator's
  std::vector<RingPoly> minimal;
  for (size_t i = 0; i < work.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < work.size(); ++j) {
      if (i == j) continue;
      const Mono& mi = work[i].leading().mono;
      const Mono& mj = work[j].leading().mono;
      if (mono_divides(mj, mi) && !(mi == mj && j > i)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(work[i]);
  }

  // inter-reduce tails
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<RingPoly> others;
    others.reserve(minimal.size() - 1);
    for (size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    minimal[i] = reduce_full(std::move(minimal[i]), others);
    minimal[i].make_monic();
  }
  std::erase_if(minimal, [](const RingPoly& g) { return g.is_zero(); });

  std::sort(minimal.begin(), minimal.end(), [&](const RingPoly& a, const RingPoly& b) {
    return order.less(a.leading().mono, b.leading().mono);
  });
  return GroebnerBasis(mod, order, std::move(minimal));
}

RingPoly normal_form(RingPoly a, const GroebnerBasis& G) {
  if (a.modulus() != G.modulus()) fail(errc::modulus_mismatch, "normal_form modulus mismatch");
  if (!(a.order() == G.order())) fail(errc::invalid_argument, "normal_form order mismatch");
  return reduce_full(std::move(a), G.generators());
}

RingPoly power_mod(const RingPoly& base, uint64_t e, const GroebnerBasis& G) {
  RingPoly acc = normal_form(RingPoly::constant(base.modulus(), base.order(), 1), G);
  RingPoly sq = normal_form(base, G);
  while (e) {
    if (e & 1) acc = normal_form(acc * sq, G);
    e >>= 1;
    if (e) sq = normal_form(sq * sq, G);
  }
  return acc;
}

RingPoly power_mod_var(int var, uint64_t e, const GroebnerBasis& G) {
  Mono m{0, 0, 0};
  m[var] = 1;
  return power_mod(RingPoly::monomial(G.modulus(), G.order(), m, 1), e, G);
}

std::optional<uint64_t> quotient_dimension(const GroebnerBasis& G) {
  const int nv = G.order().nvars();
  std::vector<Mono> lms;
  for (const auto& g : G.generators()) {
    const Mono& m = g.leading().mono;
    if (total_degree(m) == 0) return 0;  // 1 is in the ideal
    lms.push_back(m);
  }
  // finite iff each variable has a pure power among the leading monomials
  std::array<int32_t, 3> bound{1, 1, 1};
  for (int v = 0; v < nv; ++v) {
    int32_t best = -1;
    for (const Mono& m : lms) {
      if (m[v] > 0 && m[v] == total_degree(m)) {
        if (best < 0 || m[v] < best) best = m[v];
      }
    }
    if (best < 0) return std::nullopt;
    bound[v] = best;
  }
  uint64_t count = 0;
  Mono m{0, 0, 0};
  for (m[0] = 0; m[0] < bound[0]; ++m[0]) {
    for (m[1] = 0; m[1] < bound[1]; ++m[1]) {
      for (m[2] = 0; m[2] < bound[2]; ++m[2]) {
        bool standard = true;
        for (const Mono& lm : lms) {
          if (mono_divides(lm, m)) {
            standard = false;
            break;
          }
        }
        if (standard) ++count;
      }
    }
  }
  return count;
}

KTwistedEvaluator::KTwistedEvaluator(const LaurentPoly& f, const LaurentPoly& g)
    : mod_(f.modulus()),
      base_([&] {
        if (f.is_zero() || g.is_zero()) fail(errc::zero_polynomial, "f and g must be nonzero");
        if (f.modulus() != g.modulus()) fail(errc::modulus_mismatch, "f and g over different Z_p");
        MonomialOrder ord(OrderKind::grevlex, 2);
        auto fn = normalize_to_polynomial(f).first;
        auto gn = normalize_to_polynomial(g).first;
        return buchberger({RingPoly::from_laurent(fn, ord), RingPoly::from_laurent(gn, ord)}, ord);
      }()) {}

int64_t KTwistedEvaluator::k(int64_t alpha, int64_t beta, int64_t gamma) const {
  if (alpha < 1 || beta < 1) fail(errc::invalid_argument, "torus requires alpha, beta >= 1");
  int64_t gam = floor_mod(gamma, alpha);
  MonomialOrder ord = base_.order();
  RingPoly one = RingPoly::constant(mod_, ord, 1);

  RingPoly r1 = power_mod_var(1, uint64_t(alpha), base_);
  r1 -= one;
  RingPoly xb = power_mod_var(0, uint64_t(beta), base_);
  RingPoly yg = power_mod_var(1, uint64_t(gam), base_);
  RingPoly r2 = normal_form(xb * yg, base_);
  r2 -= one;

  std::vector<RingPoly> gens = base_.generators();
  if (!r1.is_zero()) gens.push_back(std::move(r1));
  if (!r2.is_zero()) gens.push_back(std::move(r2));
  GroebnerBasis full = buchberger(std::move(gens), ord);
  auto dim = quotient_dimension(full);
  if (!dim) fail(errc::not_finite_quotient, "quotient is not finite-dimensional");
  return 2 * int64_t(*dim);
}

int64_t k_twisted(const LaurentPoly& f, const LaurentPoly& g, const TorusSpec& torus) {
  if (f.modulus() != torus.prime() || g.modulus() != torus.prime())
    fail(errc::modulus_mismatch, "polynomial modulus differs from torus modulus");
  return KTwistedEvaluator(f, g).k(torus.alpha(), torus.beta(), torus.gamma());
}

std::optional<int64_t> k_max(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.is_zero() || g.is_zero()) fail(errc::zero_polynomial, "f and g must be nonzero");
  if (f.modulus() != g.modulus()) fail(errc::modulus_mismatch, "f and g over different Z_p");
  MonomialOrder ord(OrderKind::grevlex, 3);
  PrimeModulus mod = f.modulus();

  auto lift = [&](const LaurentPoly& a) {
    auto an = normalize_to_polynomial(a).first;
    RingPoly out(mod, ord);
    for (const auto& [e, c] : an.terms()) out.add_term({int32_t(e.x), int32_t(e.y), 0}, c);
    return out;
  };
  // t = (xy)^-1 makes x and y units (Rabinowitsch localization)
  RingPoly rel(mod, ord);
  rel.add_term({1, 1, 1}, 1);
  rel.add_term({0, 0, 0}, -1);

  GroebnerBasis G = buchberger({lift(f), lift(g), std::move(rel)}, ord);
  auto dim = quotient_dimension(G);
  if (!dim) return std::nullopt;
  return 2 * int64_t(*dim);
}

bool check_topological_order(const LaurentPoly& f, const LaurentPoly& g) {
  return k_max(f, g).has_value();
}

}  // namespace qtc
