#include "core/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "core/analysis.hpp"
#include "core/csscode.hpp"
#include "core/distance.hpp"
#include "core/groebner.hpp"
#include "core/parser.hpp"
#include "core/rng.hpp"

namespace qtc {

namespace {

std::atomic<bool> g_stop{false};

constexpr uint64_t kVerifySalt = 0x3c6ef372fe94f82bull;
constexpr int64_t kChunkPairs = 2048;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

std::vector<uint32_t> coefficient_list(const SearchSpace& space) {
  uint32_t p = space.p.value();
  std::vector<uint32_t> out;
  if (space.coefficients.empty()) {
    for (uint32_t r = 1; r < p; ++r) out.push_back(r);
    return out;
  }
  out = space.coefficients;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (uint32_t r : out) {
    if (r == 0 || r >= p) fail(errc::invalid_argument, "coefficient outside Z_p \\ {0}");
  }
  return out;
}

// Cell representatives usable as the extra exponent of f (resp. g); the two
// always-colliding positions are dropped up front.
std::vector<Exponent> exponent_box(int64_t alpha, int64_t beta, bool for_f) {
  std::vector<Exponent> out;
  for (int64_t a = 0; a < beta; ++a) {
    for (int64_t b = 0; b < alpha; ++b) {
      if (for_f && ((a == 0 && b == 0) || (a == 1 && b == 0))) continue;
      if (!for_f && ((a == 0 && b == 0) || (a == 0 && b == 1))) continue;
      out.push_back({a, b});
    }
  }
  return out;
}

struct PairGroup {
  int64_t n, alpha, beta;
  std::vector<Exponent> fexps, gexps;
  uint64_t pair_count;  // m^4 * |fexps| * |gexps|
  uint64_t raw_count;   // m^4 * box^2
};

struct Candidate {
  int64_t alpha, beta, gamma;
  std::string f, g;
  int64_t k;
  int32_t d_prune;
  double provisional;
};

struct ChunkResult {
  uint64_t visited = 0, to_failed = 0, k_zero = 0, pruned = 0, failures = 0;
  std::vector<Candidate> survivors;
};

std::string candidate_key(uint32_t p, const Candidate& c) {
  std::ostringstream os;
  os << p << '|' << c.alpha << '|' << c.beta << '|' << c.gamma << '|' << c.f << '|' << c.g;
  return os.str();
}

struct RankedRecord {
  CodeRecord record;
  double range;
};

uint64_t space_signature(const SearchSpace& space, const std::vector<uint32_t>& coeffs) {
  std::ostringstream os;
  os << "qtc-search-v1|" << space.p.value() << '|' << space.n_min << '|' << space.n_max << '|'
     << space.seed << '|' << space.prune.sets << 'x' << space.prune.repeats << '|'
     << space.full.sets << 'x' << space.full.repeats << '|';
  for (uint32_t c : coeffs) os << c << ',';
  return fnv1a(os.str());
}

std::pair<LaurentPoly, LaurentPoly> pair_from_index(PrimeModulus p, const PairGroup& grp,
                                                    const std::vector<uint32_t>& coeffs,
                                                    uint64_t idx) {
  const uint64_t m = coeffs.size();
  uint64_t r4 = idx % m; idx /= m;
  uint64_t r3 = idx % m; idx /= m;
  uint64_t r2 = idx % m; idx /= m;
  uint64_t r1 = idx % m; idx /= m;
  uint64_t gi = idx % grp.gexps.size(); idx /= grp.gexps.size();
  uint64_t fi = idx;

  LaurentPoly f(p), g(p);
  f.add_term({0, 0}, 1);
  f.add_term({1, 0}, coeffs[r1]);
  f.add_term(grp.fexps[fi], coeffs[r2]);
  g.add_term({0, 0}, 1);
  g.add_term({0, 1}, coeffs[r3]);
  g.add_term(grp.gexps[gi], coeffs[r4]);
  return {std::move(f), std::move(g)};
}

struct ChunkSpec {
  size_t group;
  uint64_t pair_begin, pair_end;
};

bool write_chunk_file(const std::string& dir, uint64_t sig, size_t chunk_id,
                      const ChunkResult& res) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::string path = dir + "/chunk_" + std::to_string(chunk_id) + ".txt";
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return false;
    out << "qtc-chunk 1 " << sig << ' ' << chunk_id << ' ' << res.visited << ' ' << res.to_failed
        << ' ' << res.k_zero << ' ' << res.pruned << ' ' << res.failures << ' '
        << res.survivors.size() << '\n';
    for (const Candidate& c : res.survivors) {
      out << c.alpha << ' ' << c.beta << ' ' << c.gamma << ' ' << c.k << ' ' << c.d_prune << ' '
          << c.f << ' ' << c.g << '\n';
    }
    if (!out) return false;
  }
  return std::rename(tmp.c_str(), path.c_str()) == 0;
}

std::optional<ChunkResult> read_chunk_file(const std::string& dir, uint64_t sig,
                                           size_t chunk_id) {
  std::ifstream in(dir + "/chunk_" + std::to_string(chunk_id) + ".txt", std::ios::binary);
  if (!in) return std::nullopt;
  std::string tag;
  int version = 0;
  uint64_t file_sig = 0, id = 0, nsurv = 0;
  ChunkResult res;
  in >> tag >> version >> file_sig >> id >> res.visited >> res.to_failed >> res.k_zero >>
      res.pruned >> res.failures >> nsurv;
  if (!in || tag != "qtc-chunk" || version != 1 || file_sig != sig || id != chunk_id)
    return std::nullopt;
  for (uint64_t i = 0; i < nsurv; ++i) {
    Candidate c;
    in >> c.alpha >> c.beta >> c.gamma >> c.k >> c.d_prune >> c.f >> c.g;
    if (!in) return std::nullopt;
    int64_t n = 2 * c.alpha * c.beta;
    c.provisional = double(c.k) * double(c.d_prune) * double(c.d_prune) / double(n);
    res.survivors.push_back(std::move(c));
  }
  return res;
}

}  // namespace

void request_search_stop() { g_stop.store(true); }
void reset_search_stop() { g_stop.store(false); }
bool search_stop_requested() { return g_stop.load(); }

std::vector<TorusSpec> enumerate_tori(PrimeModulus p, int64_t n) {
  if (n < 2 || n % 2 != 0) fail(errc::invalid_argument, "n must be even and at least 2");
  const int64_t cells = n / 2;
  std::vector<TorusSpec> out;
  for (int64_t beta = 1; beta <= cells; ++beta) {
    if (cells % beta != 0) continue;
    int64_t alpha = cells / beta;
    for (int64_t gamma = 0; gamma < alpha; ++gamma) out.emplace_back(p, alpha, beta, gamma);
  }
  return out;
}

std::vector<std::pair<LaurentPoly, LaurentPoly>> enumerate_polys(PrimeModulus p,
                                                                 const TorusSpec& torus) {
  std::vector<std::pair<LaurentPoly, LaurentPoly>> out;
  std::set<std::pair<std::string, std::string>> seen;
  const uint32_t pv = p.value();
  for (int64_t a = 0; a < torus.beta(); ++a) {
    for (int64_t b = 0; b < torus.alpha(); ++b) {
      for (int64_t c = 0; c < torus.beta(); ++c) {
        for (int64_t d = 0; d < torus.alpha(); ++d) {
          for (uint32_t r1 = 1; r1 < pv; ++r1) {
            for (uint32_t r2 = 1; r2 < pv; ++r2) {
              for (uint32_t r3 = 1; r3 < pv; ++r3) {
                for (uint32_t r4 = 1; r4 < pv; ++r4) {
                  auto [f, g] = make_generalized_pair(p, {r1, p}, {r2, p}, {r3, p}, {r4, p}, a, b,
                                                      c, d);
                  if (f.term_count() < 3 || g.term_count() < 3) continue;
                  auto key = std::make_pair(canonical_unit_form(f).str(),
                                            canonical_unit_form(g).str());
                  if (!seen.insert(std::move(key)).second) continue;
                  out.emplace_back(std::move(f), std::move(g));
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

SearchResult run_search(const SearchSpace& space,
                        const std::function<void(const SearchStats&)>& progress) {
  if (space.n_min < 2 || space.n_min > space.n_max || space.n_min % 2 || space.n_max % 2)
    fail(errc::invalid_argument, "search range must be even and nonempty");
  const uint32_t p = space.p.value();
  const std::vector<uint32_t> coeffs = coefficient_list(space);
  const uint64_t m = coeffs.size();
  const uint64_t m4 = m * m * m * m;
  const uint64_t sig = space_signature(space, coeffs);
  const int threads = resolve_threads(space.threads);

  std::vector<PairGroup> groups;
  for (int64_t n = space.n_min; n <= space.n_max; n += 2) {
    const int64_t cells = n / 2;
    for (int64_t beta = 1; beta <= cells; ++beta) {
      if (cells % beta != 0) continue;
      int64_t alpha = cells / beta;
      PairGroup grp;
      grp.n = n;
      grp.alpha = alpha;
      grp.beta = beta;
      grp.fexps = exponent_box(alpha, beta, true);
      grp.gexps = exponent_box(alpha, beta, false);
      grp.pair_count = m4 * grp.fexps.size() * grp.gexps.size();
      grp.raw_count = m4 * uint64_t(cells) * uint64_t(cells);
      groups.push_back(std::move(grp));
    }
  }

  std::vector<ChunkSpec> chunks;
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    for (uint64_t b = 0; b < groups[gi].pair_count; b += kChunkPairs) {
      chunks.push_back({gi, b, std::min<uint64_t>(b + kChunkPairs, groups[gi].pair_count)});
    }
  }

  SearchStats stats;
  stats.chunks_total = chunks.size();
  for (const auto& grp : groups) {
    stats.pairs_raw += grp.raw_count;
    stats.degenerate += grp.raw_count - grp.pair_count;
  }

  std::atomic<uint64_t> a_visited{0}, a_to_failed{0}, a_k_zero{0}, a_pruned{0}, a_failures{0},
      a_done{0};
  std::mutex progress_mutex;
  auto report = [&] {
    if (!progress) return;
    SearchStats snap = stats;
    snap.visited = a_visited.load();
    snap.to_failed = a_to_failed.load();
    snap.k_zero = a_k_zero.load();
    snap.pruned = a_pruned.load();
    snap.failures = a_failures.load();
    snap.chunks_done = a_done.load();
    std::lock_guard<std::mutex> lock(progress_mutex);
    progress(snap);
  };

  auto run_chunk = [&](const ChunkSpec& spec) {
    const PairGroup& grp = groups[spec.group];
    ChunkResult res;
    double chunk_best = -1.0;
    for (uint64_t pi = spec.pair_begin; pi < spec.pair_end; ++pi) {
      auto [f, g] = pair_from_index(space.p, grp, coeffs, pi);
      try {
        std::optional<KTwistedEvaluator> eval;
        std::optional<bool> to_ok;
        for (int64_t gamma = 0; gamma < grp.alpha; ++gamma) {
          ++res.visited;
          if (!eval) eval.emplace(f, g);
          int64_t k = eval->k(grp.alpha, grp.beta, gamma);
          if (k <= 0) {
            ++res.k_zero;
            continue;
          }
          if (!to_ok) to_ok = check_topological_order(f, g);
          if (!*to_ok) {
            ++res.to_failed;
            continue;
          }
          Candidate cand;
          cand.alpha = grp.alpha;
          cand.beta = grp.beta;
          cand.gamma = gamma;
          cand.f = f.str();
          cand.g = g.str();
          cand.k = k;

          CodeInstance inst(f, g, TorusSpec(space.p, grp.alpha, grp.beta, gamma));
          DistanceOptions opt;
          opt.sets = space.prune.sets;
          opt.repeats = space.prune.repeats;
          opt.seed = mix_u64(space.seed, fnv1a(candidate_key(p, cand)));
          opt.threads = 1;
          DistanceEstimate est = estimate_distance(inst, opt);
          cand.d_prune = est.d_upper;
          cand.provisional = double(k) * double(est.d_upper) * double(est.d_upper) / double(grp.n);
          if (cand.provisional > chunk_best) {
            chunk_best = cand.provisional;
            res.survivors.push_back(std::move(cand));
          } else {
            ++res.pruned;
          }
        }
      } catch (const error&) {
        ++res.failures;
      }
    }
    return res;
  };

  std::vector<std::optional<ChunkResult>> results(chunks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (!g_stop.load()) {
      size_t id = next.fetch_add(1);
      if (id >= chunks.size()) break;
      std::optional<ChunkResult> res;
      if (!space.checkpoint_dir.empty()) res = read_chunk_file(space.checkpoint_dir, sig, id);
      if (!res) {
        res = run_chunk(chunks[id]);
        if (!space.checkpoint_dir.empty()) write_chunk_file(space.checkpoint_dir, sig, id, *res);
      }
      a_visited += res->visited;
      a_to_failed += res->to_failed;
      a_k_zero += res->k_zero;
      a_pruned += res->pruned;
      a_failures += res->failures;
      results[id] = std::move(res);
      ++a_done;
      report();
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  stats.interrupted = g_stop.load();

  std::vector<Candidate> survivors;
  for (auto& res : results) {
    if (!res) continue;
    stats.visited += res->visited;
    stats.to_failed += res->to_failed;
    stats.k_zero += res->k_zero;
    stats.pruned += res->pruned;
    stats.failures += res->failures;
    ++stats.chunks_done;
    for (auto& c : res->survivors) survivors.push_back(std::move(c));
  }
  stats.survivors = survivors.size();

  // Confirmation stage: per n, descending provisional order; a candidate
  // whose provisional bound cannot beat an already confirmed value is
  // dropped (full-budget estimates never exceed provisional ones because
  // the trial set only grows for a fixed base seed).
  std::stable_sort(survivors.begin(), survivors.end(), [](const Candidate& a, const Candidate& b) {
    int64_t na = 2 * a.alpha * a.beta, nb = 2 * b.alpha * b.beta;
    if (na != nb) return na < nb;
    if (a.provisional != b.provisional) return a.provisional > b.provisional;
    if (a.f != b.f) return a.f < b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.gamma < b.gamma;
  });

  std::vector<RankedRecord> emitted;
  size_t i = 0;
  while (i < survivors.size()) {
    int64_t n = 2 * survivors[i].alpha * survivors[i].beta;
    double best_full = -1.0;
    for (; i < survivors.size() && 2 * survivors[i].alpha * survivors[i].beta == n; ++i) {
      const Candidate& c = survivors[i];
      if (c.provisional < best_full) continue;  // cannot improve; ties still run
      try {
        LaurentPoly f = parse_poly(c.f, space.p), g = parse_poly(c.g, space.p);
        TorusSpec torus(space.p, c.alpha, c.beta, c.gamma);
        CodeInstance inst(f, g, torus);

        int64_t k_check = k_linalg(inst);
        if (k_check != c.k)
          fail(errc::internal, "oracle disagreement: k_twisted=" + std::to_string(c.k) +
                                   " k_linalg=" + std::to_string(k_check));

        uint64_t key = fnv1a(candidate_key(p, c));
        DistanceOptions opt;
        opt.sets = space.full.sets;
        opt.repeats = space.full.repeats;
        opt.seed = mix_u64(space.seed, key);
        opt.threads = space.threads;
        DistanceEstimate est = estimate_distance(inst, opt);
        ++stats.confirmed;

        DistanceOptions verify = opt;
        verify.seed = mix_u64(space.seed ^ kVerifySalt, key);
        DistanceEstimate est2 = estimate_distance(inst, verify);
        int32_t d = est.d_upper;
        if (est2.d_upper < d) {
          d = est2.d_upper;
          ++stats.d_decreases;
        }

        CodeRecord rec = CodeRecord::make(p, n, c.k, d, c.f, c.g, c.alpha, c.beta, c.gamma,
                                          opt.sets, opt.repeats, opt.seed, est.converged);
        best_full = std::max(best_full, rec.kd2_over_n);
        emitted.push_back({std::move(rec), stabilizer_range(f, g)});
      } catch (const error& e) {
        if (e.code() == errc::internal) throw;
        ++stats.failures;
      }
    }
  }

  // Paper-style representative ordering: best kd^2/n first within each n,
  // most local stabilizers breaking ties.
  std::stable_sort(emitted.begin(), emitted.end(), [](const RankedRecord& a, const RankedRecord& b) {
    if (a.record.n != b.record.n) return a.record.n < b.record.n;
    if (a.record.kd2_over_n != b.record.kd2_over_n) return a.record.kd2_over_n > b.record.kd2_over_n;
    if (a.range != b.range) return a.range < b.range;
    if (a.record.f != b.record.f) return a.record.f < b.record.f;
    if (a.record.g != b.record.g) return a.record.g < b.record.g;
    return a.record.gamma < b.record.gamma;
  });
  std::vector<CodeRecord> records;
  records.reserve(emitted.size());
  for (auto& rr : emitted) records.push_back(std::move(rr.record));
  stats.emitted = records.size();
  report();
  return {std::move(records), stats};
}

}  // namespace qtc
