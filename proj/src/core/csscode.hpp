#pragma once

#include <cstdint>
#include <utility>

#include "core/gfp_matrix.hpp"
#include "core/lattice.hpp"
#include "core/laurent.hpp"

namespace qtc {

/// One concrete code: a stabilizer pair (f, g) on a twisted torus.
struct CodeInstance {
  LaurentPoly f;
  LaurentPoly g;
  TorusSpec torus;

  CodeInstance(LaurentPoly f_, LaurentPoly g_, TorusSpec torus_);

  int64_t n() const { return torus.n(); }
};

/// Parity-check matrices, alpha*beta rows by n = 2*alpha*beta columns each.
/// Rows are indexed by the base cell (cell-major), columns by qudit_index.
struct ParityChecks {
  GfpMatrix hx;
  GfpMatrix hz;
};

/// X rows place f on the first qudit of each translated cell and g on the
/// second; Z rows place -antipode(g) and antipode(f). Wrapped placements
/// that collide accumulate mod p.
ParityChecks build_checks(const CodeInstance& c);

/// Rank-nullity oracle: k = n - rank(H_X) - rank(H_Z).
int64_t k_linalg(const CodeInstance& c);

/// Largest row weight over both check matrices (at most 6 for the
/// generalized toric family; less only when torus wrapping collides terms).
int32_t max_row_weight(const ParityChecks& pc);

}  // namespace qtc
