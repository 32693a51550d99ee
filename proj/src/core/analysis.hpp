#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/csscode.hpp"
#include "core/records.hpp"

namespace qtc {

/// Ordinary least squares result. r_squared is NaN when all y coincide
/// (SS_tot = 0 leaves it undefined); slope and intercept are still valid.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  size_t points = 0;
};

/// Minimizes sum (y - (m x + c))^2. Requires at least two points with the
/// x values not all equal (errc::degenerate_input otherwise).
FitResult linear_fit(std::span<const std::pair<double, double>> points);

/// Fits kd^2/n against n ln p over all records; needs records from at least
/// two distinct p.
FitResult global_fit(std::span<const CodeRecord> records);

struct PerPFit {
  int64_t p;
  FitResult fit;
};

struct PerPAnalysis {
  std::vector<PerPFit> per_p;                 // fit of (n, kd^2/n) for each p
  std::optional<FitResult> slope_vs_lnp;      // second-level fit of (ln p, slope)
  std::vector<int64_t> skipped;               // p with too few points for a fit
};

PerPAnalysis per_p_slopes(std::span<const CodeRecord> records);

/// Geometric diameter of one stabilizer: the maximum Euclidean distance
/// between qudit placements, read off the exponent offsets of f and g
/// before any torus reduction. Invariant under unit normalization.
double stabilizer_range(const LaurentPoly& f, const LaurentPoly& g);
double stabilizer_range(const CodeInstance& c);

enum class PlotMode { global, per_p };

/// Static SVG scatter plot of the records with the fitted line(s);
/// x is n*ln p in global mode and n in per-p mode.
void write_scatter_svg(std::span<const CodeRecord> records, PlotMode mode,
                       const std::string& path);

}  // namespace qtc
