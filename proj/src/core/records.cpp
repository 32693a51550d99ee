#include "core/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace qtc {

CodeRecord CodeRecord::make(int64_t p, int64_t n, int64_t k, int32_t d, std::string f,
                            std::string g, int64_t alpha, int64_t beta, int64_t gamma,
                            int64_t sets, int64_t repeats, uint64_t seed, bool converged) {
  CodeRecord r;
  r.p = p;
  r.n = n;
  r.k = k;
  r.d_upper = d;
  r.f = std::move(f);
  r.g = std::move(g);
  r.alpha = alpha;
  r.beta = beta;
  r.gamma = gamma;
  r.kd2_over_n = double(k) * double(d) * double(d) / double(n);
  r.sets = sets;
  r.repeats = repeats;
  r.seed = seed;
  r.converged = converged;
  return r;
}

namespace {

std::string format_kd2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

int64_t parse_int(const std::string& s, size_t line_no, const char* field) {
  try {
    size_t used = 0;
    int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(errc::parse, "line " + std::to_string(line_no) + ": bad integer in field " + field);
  }
}

uint64_t parse_u64(const std::string& s, size_t line_no, const char* field) {
  try {
    size_t used = 0;
    uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(errc::parse, "line " + std::to_string(line_no) + ": bad integer in field " + field);
  }
}

}  // namespace

std::string records_to_csv(std::span<const CodeRecord> records) {
  std::ostringstream out;
  out << kRecordCsvHeader << '\n';
  for (const CodeRecord& r : records) {
    out << r.p << ',' << r.n << ',' << r.k << ',' << r.d_upper << ',' << r.f << ',' << r.g << ','
        << r.alpha << ',' << r.beta << ',' << r.gamma << ',' << format_kd2(r.kd2_over_n) << ','
        << r.sets << ',' << r.repeats << ',' << r.seed << ','
        << (r.converged ? "true" : "false") << '\n';
  }
  return out.str();
}

std::vector<CodeRecord> records_from_csv(std::string_view text) {
  std::vector<CodeRecord> out;
  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kRecordCsvHeader)
        fail(errc::parse, "line 1: expected header '" + std::string(kRecordCsvHeader) + "'");
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 14)
      fail(errc::parse, "line " + std::to_string(line_no) + ": expected 14 fields, got " +
                            std::to_string(fields.size()));
    CodeRecord r;
    r.p = parse_int(fields[0], line_no, "p");
    r.n = parse_int(fields[1], line_no, "n");
    r.k = parse_int(fields[2], line_no, "k");
    r.d_upper = int32_t(parse_int(fields[3], line_no, "d"));
    r.f = fields[4];
    r.g = fields[5];
    r.alpha = parse_int(fields[6], line_no, "alpha");
    r.beta = parse_int(fields[7], line_no, "beta");
    r.gamma = parse_int(fields[8], line_no, "gamma");
    r.sets = parse_int(fields[10], line_no, "sets");
    r.repeats = parse_int(fields[11], line_no, "repeats");
    r.seed = parse_u64(fields[12], line_no, "seed");
    if (fields[13] == "true")
      r.converged = true;
    else if (fields[13] == "false")
      r.converged = false;
    else
      fail(errc::parse, "line " + std::to_string(line_no) + ": converged must be true or false");

    if (r.n <= 0 || r.k <= 0 || r.d_upper <= 0)
      fail(errc::parse, "line " + std::to_string(line_no) + ": n, k, d must be positive");
    r.kd2_over_n = double(r.k) * double(r.d_upper) * double(r.d_upper) / double(r.n);
    if (fields[9] != format_kd2(r.kd2_over_n))
      fail(errc::parse, "line " + std::to_string(line_no) + ": kd2_over_n " + fields[9] +
                            " does not match k*d^2/n = " + format_kd2(r.kd2_over_n));
    out.push_back(std::move(r));
  }
  if (line_no == 0) fail(errc::parse, "empty results file");
  return out;
}

void write_records_csv(std::span<const CodeRecord> records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot open for writing: " + path);
  out << records_to_csv(records);
  if (!out) fail(errc::io, "write failed: " + path);
}

std::vector<CodeRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return records_from_csv(buf.str());
}

std::vector<CodeRecord> pareto_front(std::vector<CodeRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const CodeRecord& a, const CodeRecord& b) { return a.n < b.n; });
  std::vector<CodeRecord> kept;
  double best_smaller_n = -1.0;  // best kd^2/n among kept records with n < current group
  size_t i = 0;
  while (i < records.size()) {
    size_t j = i;
    double group_best = best_smaller_n;
    while (j < records.size() && records[j].n == records[i].n) {
      if (records[j].kd2_over_n > best_smaller_n) {
        group_best = std::max(group_best, records[j].kd2_over_n);
        kept.push_back(std::move(records[j]));
      }
      ++j;
    }
    best_smaller_n = group_best;
    i = j;
  }
  return kept;
}

}  // namespace qtc
