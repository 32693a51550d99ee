#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtc {

/// One searched or verified code instance, the row schema of result files.
struct CodeRecord {
  int64_t p = 0;
  int64_t n = 0;
  int64_t k = 0;
  int32_t d_upper = 0;
  std::string f;
  std::string g;
  int64_t alpha = 0;
  int64_t beta = 0;
  int64_t gamma = 0;
  double kd2_over_n = 0.0;
  int64_t sets = 0;
  int64_t repeats = 0;
  uint64_t seed = 0;
  bool converged = false;

  static CodeRecord make(int64_t p, int64_t n, int64_t k, int32_t d, std::string f, std::string g,
                         int64_t alpha, int64_t beta, int64_t gamma, int64_t sets, int64_t repeats,
                         uint64_t seed, bool converged);
};

inline constexpr std::string_view kRecordCsvHeader =
    "p,n,k,d,f,g,alpha,beta,gamma,kd2_over_n,sets,repeats,seed,converged";

/// CSV serialization. Integers verbatim, kd2_over_n with four decimals, so
/// write -> read -> write is byte-identical.
std::string records_to_csv(std::span<const CodeRecord> records);
std::vector<CodeRecord> records_from_csv(std::string_view text);

void write_records_csv(std::span<const CodeRecord> records, const std::string& path);
std::vector<CodeRecord> read_records_csv(const std::string& path);

/// Keeps a record iff its kd^2/n strictly exceeds that of every kept record
/// with smaller n. Input is expected sorted by n; idempotent.
std::vector<CodeRecord> pareto_front(std::vector<CodeRecord> records);

}  // namespace qtc
