#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace qtc {

FitResult linear_fit(std::span<const std::pair<double, double>> points) {
  const size_t m = points.size();
  if (m < 2) fail(errc::degenerate_input, "linear fit needs at least two points");
  double mx = 0, my = 0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= double(m);
  my /= double(m);
  double sxx = 0, sxy = 0, sst = 0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    sst += (y - my) * (y - my);
  }
  if (sxx == 0.0) fail(errc::degenerate_input, "linear fit needs at least two distinct x values");
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.points = m;
  if (sst == 0.0) {
    r.r_squared = std::numeric_limits<double>::quiet_NaN();
  } else {
    double ssr = 0;
    for (const auto& [x, y] : points) {
      double e = y - (r.slope * x + r.intercept);
      ssr += e * e;
    }
    r.r_squared = 1.0 - ssr / sst;
  }
  return r;
}

FitResult global_fit(std::span<const CodeRecord> records) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(records.size());
  int64_t first_p = 0;
  bool multi_p = false;
  for (const CodeRecord& r : records) {
    if (first_p == 0)
      first_p = r.p;
    else if (r.p != first_p)
      multi_p = true;
    pts.emplace_back(double(r.n) * std::log(double(r.p)), r.kd2_over_n);
  }
  if (!multi_p) fail(errc::degenerate_input, "global fit needs records from at least two primes");
  return linear_fit(pts);
}

PerPAnalysis per_p_slopes(std::span<const CodeRecord> records) {
  std::map<int64_t, std::vector<std::pair<double, double>>> groups;
  for (const CodeRecord& r : records) {
    groups[r.p].emplace_back(double(r.n), r.kd2_over_n);
  }
  PerPAnalysis out;
  std::vector<std::pair<double, double>> second;
  for (const auto& [p, pts] : groups) {
    bool distinct_x = false;
    for (size_t i = 1; i < pts.size(); ++i) distinct_x = distinct_x || pts[i].first != pts[0].first;
    if (pts.size() < 2 || !distinct_x) {
      out.skipped.push_back(p);
      continue;
    }
    FitResult fit = linear_fit(pts);
    second.emplace_back(std::log(double(p)), fit.slope);
    out.per_p.push_back({p, fit});
  }
  if (second.size() >= 2) out.slope_vs_lnp = linear_fit(second);
  return out;
}

double stabilizer_range(const LaurentPoly& f, const LaurentPoly& g) {
  std::vector<Exponent> pts;
  for (const LaurentPoly* poly : {&f, &g}) {
    for (const auto& [e, c] : poly->terms()) {
      (void)c;
      pts.push_back(e);
    }
  }
  double best = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double dx = double(pts[i].x - pts[j].x);
      double dy = double(pts[i].y - pts[j].y);
      best = std::max(best, dx * dx + dy * dy);
    }
  }
  return std::sqrt(best);
}

double stabilizer_range(const CodeInstance& c) { return stabilizer_range(c.f, c.g); }

namespace {

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void feed(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

const char* color_for_p(int64_t p) {
  switch (p) {
    case 2: return "#555555";
    case 3: return "#1f77b4";
    case 5: return "#2ca02c";
    case 7: return "#d62728";
    case 11: return "#9467bd";
    default: return "#ff7f0e";
  }
}

}  // namespace

void write_scatter_svg(std::span<const CodeRecord> records, PlotMode mode,
                       const std::string& path) {
  if (records.empty()) fail(errc::degenerate_input, "no records to plot");
  const double W = 640, H = 480, ml = 60, mr = 20, mt = 20, mb = 45;

  auto xval = [&](const CodeRecord& r) {
    return mode == PlotMode::global ? double(r.n) * std::log(double(r.p)) : double(r.n);
  };
  Extent ex, ey;
  for (const auto& r : records) {
    ex.feed(xval(r));
    ey.feed(r.kd2_over_n);
  }
  auto sx = [&](double x) { return ml + (x - ex.lo) / ex.span() * (W - ml - mr); };
  auto sy = [&](double y) { return H - mb - (y - ey.lo) / ey.span() * (H - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (W / 2) << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">"
      << (mode == PlotMode::global ? "n ln p" : "n") << "</text>\n";
  svg << "<text x=\"15\" y=\"" << (H / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << (H / 2) << ")\">k d^2 / n</text>\n";

  auto draw_line = [&](double slope, double intercept, const char* color) {
    double x0 = ex.lo, x1 = ex.hi;
    svg << "<line x1=\"" << sx(x0) << "\" y1=\"" << sy(slope * x0 + intercept) << "\" x2=\""
        << sx(x1) << "\" y2=\"" << sy(slope * x1 + intercept) << "\" stroke=\"" << color
        << "\" stroke-dasharray=\"5 3\"/>\n";
  };

  if (mode == PlotMode::global) {
    FitResult fit = global_fit(records);
    draw_line(fit.slope, fit.intercept, "#000000");
  } else {
    PerPAnalysis a = per_p_slopes(records);
    for (const auto& [p, fit] : a.per_p) draw_line(fit.slope, fit.intercept, color_for_p(p));
  }
  for (const auto& r : records) {
    svg << "<circle cx=\"" << sx(xval(r)) << "\" cy=\"" << sy(r.kd2_over_n)
        << "\" r=\"3.5\" fill=\"" << color_for_p(r.p) << "\"/>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot open for writing: " + path);
  out << svg.str();
  if (!out) fail(errc::io, "write failed: " + path);
}

}  // namespace qtc
