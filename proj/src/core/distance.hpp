#pragma once

#include <cstdint>
#include <span>

#include "core/csscode.hpp"

namespace qtc {

/// Result of the exhaustive search: either a certified minimum weight (a
/// logical vector of that weight exists, none lighter does) or the statement
/// that every logical vector is heavier than w_max.
struct ExactDistanceResult {
  int32_t value;  // meaningful when !exceeds
  bool exceeds;
  int32_t w_max;
};

/// Brute-force oracle over both operator types. Enumerates supports of
/// ascending size with nonzero coefficients, the first one pinned to 1 by
/// scaling freedom. Cost grows as C(n,w)*(p-1)^(w-1) per side; intended for
/// n up to ~40 and w_max up to ~8.
ExactDistanceResult exact_distance(const CodeInstance& c, int32_t w_max);

struct DistanceOptions {
  int64_t sets = 5000;
  int64_t repeats = 10;
  uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

struct DistanceEstimate {
  int32_t d_upper;
  int32_t d_x_upper;
  int32_t d_z_upper;
  int64_t information_sets;
  int64_t repeats;
  uint64_t seed;
  bool converged;
};

/// Randomized information-set upper bound on the distance, run with equal
/// budgets on the Z side (kernel of H_X against the rows of H_Z) and the X
/// side. Each trial permutes the kernel generator columns, takes the RREF,
/// and scans its rows plus random 2- and 3-row combinations for low-weight
/// vectors outside the stabilizer row space. Every trial's randomness is
/// derived from (seed, side, trial index), so results are identical for any
/// thread count, and more trials can only lower the bound.
DistanceEstimate estimate_distance(const CodeInstance& c, const DistanceOptions& opt);

/// Number of nonzero entries.
int32_t weight(std::span<const uint32_t> v);

}  // namespace qtc
