#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "core/laurent.hpp"
#include "core/lattice.hpp"
#include "core/records.hpp"

namespace qtc {

struct DistanceBudget {
  int64_t sets;
  int64_t repeats;
};

/// Enumeration space for the weight-6 generalized toric family.
struct SearchSpace {
  PrimeModulus p;
  int64_t n_min;
  int64_t n_max;
  std::vector<uint32_t> coefficients;  // allowed r values; empty = all of [1, p)
  DistanceBudget prune{100, 1};
  DistanceBudget full{10000, 100};
  uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  std::string checkpoint_dir;  // empty disables checkpointing
};

struct SearchStats {
  uint64_t pairs_raw = 0;      // coefficient x exponent combinations before any filtering
  uint64_t degenerate = 0;     // pairs whose term collisions leave fewer than 3 terms
  uint64_t duplicates = 0;     // unit-equivalent pairs skipped
  uint64_t visited = 0;        // (pair, gamma) candidates evaluated
  uint64_t to_failed = 0;      // candidates failing the topological order condition
  uint64_t k_zero = 0;         // candidates with no logical qudits
  uint64_t pruned = 0;         // candidates dropped by the provisional distance stage
  uint64_t survivors = 0;      // candidates kept for full-budget estimation
  uint64_t confirmed = 0;      // candidates estimated at the full budget
  uint64_t emitted = 0;        // records in the output
  uint64_t d_decreases = 0;    // verification re-runs that found a smaller distance
  uint64_t failures = 0;       // candidates skipped due to per-candidate errors
  uint64_t chunks_total = 0;
  uint64_t chunks_done = 0;
  bool interrupted = false;
};

struct SearchResult {
  std::vector<CodeRecord> records;
  SearchStats stats;
};

/// All twisted tori with n qudits: factorizations n = 2*alpha*beta, each
/// with every canonical gamma in [0, alpha). Distinct triples are distinct
/// lattices, so no further deduplication is needed.
std::vector<TorusSpec> enumerate_tori(PrimeModulus p, int64_t n);

/// All weight-3 pairs whose extra exponents range over the alpha*beta cell
/// representatives, after unit-form deduplication and with degenerate pairs
/// (fewer than 3 surviving terms) skipped. Materializes the full list;
/// meant for small tori and tests. The search itself streams the same space.
std::vector<std::pair<LaurentPoly, LaurentPoly>> enumerate_polys(PrimeModulus p,
                                                                 const TorusSpec& torus);

/// Two-stage search: every candidate is screened with the prune budget
/// against the chunk-running best kd^2/n, survivors are re-estimated at the
/// full budget in descending provisional order until no remaining candidate
/// can improve on a confirmed value. Output and stats are identical for any
/// thread count given a fixed space.
SearchResult run_search(const SearchSpace& space,
                        const std::function<void(const SearchStats&)>& progress = {});

/// Asks a running search to stop after the chunk in flight; safe to call
/// from a signal handler.
void request_search_stop();
void reset_search_stop();
bool search_stop_requested();

}  // namespace qtc
