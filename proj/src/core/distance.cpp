#include "core/distance.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <thread>

#include "core/rng.hpp"

namespace qtc {

int32_t weight(std::span<const uint32_t> v) {
  int32_t w = 0;
  for (uint32_t e : v) w += (e != 0);
  return w;
}

namespace {

constexpr uint64_t kSideSaltZ = 0x7a2e6b93d1f04c55ull;
constexpr uint64_t kSideSaltX = 0x58c1a9e4257bd6a3ull;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

struct SideContext {
  std::vector<uint32_t> gen;  // kernel basis, kdim x n row-major
  size_t kdim = 0;
  GfpMatrix stab_rref;
  std::vector<size_t> stab_pivots;

  SideContext(const GfpMatrix& kernel_of, const GfpMatrix& stabs) : stab_rref(stabs) {
    stab_pivots = rref_in_place(stab_rref);
    auto basis = nullspace_gfp(kernel_of);
    kdim = basis.size();
    gen.reserve(kdim * kernel_of.cols());
    for (const auto& v : basis) gen.insert(gen.end(), v.begin(), v.end());
  }
};

struct TrialWorkspace {
  std::vector<size_t> perm;
  std::vector<uint32_t> buf;
  std::vector<uint32_t> candidate;
  std::vector<uint32_t> combo;
  std::vector<int32_t> row_weight;
  std::vector<uint32_t> row_order;
};

// One information set: returns the minimum weight over logical vectors
// examined in this trial (INT32_MAX if the trial produced nothing, which
// cannot happen when k > 0 for the single-row scan).
int32_t run_trial(const SideContext& side, size_t n, const Reducer& red, uint64_t trial_seed,
                  TrialWorkspace& ws) {
  const uint32_t p = red.p();
  SplitMix64 rng(trial_seed);

  ws.perm.resize(n);
  std::iota(ws.perm.begin(), ws.perm.end(), size_t{0});
  shuffle_with(ws.perm, rng);

  const size_t rows = side.kdim;
  ws.buf.resize(rows * n);
  for (size_t r = 0; r < rows; ++r) {
    const uint32_t* src = side.gen.data() + r * n;
    uint32_t* dst = ws.buf.data() + r * n;
    for (size_t j = 0; j < n; ++j) dst[j] = src[ws.perm[j]];
  }
  size_t rank = rref_buffer(ws.buf.data(), rows, n, red).size();

  ws.row_weight.assign(rank, 0);
  for (size_t r = 0; r < rank; ++r) {
    ws.row_weight[r] = weight({ws.buf.data() + r * n, n});
  }
  ws.row_order.resize(rank);
  std::iota(ws.row_order.begin(), ws.row_order.end(), 0u);
  std::sort(ws.row_order.begin(), ws.row_order.end(),
            [&](uint32_t a, uint32_t b) { return ws.row_weight[a] < ws.row_weight[b]; });

  auto unpermute = [&](const uint32_t* row) {
    ws.candidate.assign(n, 0);
    for (size_t j = 0; j < n; ++j) ws.candidate[ws.perm[j]] = row[j];
  };
  auto is_logical = [&](const uint32_t* row) {
    unpermute(row);
    return !in_rowspace(ws.candidate, side.stab_rref, side.stab_pivots);
  };

  int32_t best = std::numeric_limits<int32_t>::max();
  for (uint32_t r : ws.row_order) {
    if (ws.row_weight[r] >= best) break;
    if (is_logical(ws.buf.data() + size_t(r) * n)) {
      best = ws.row_weight[r];
      break;  // rows are weight-sorted; nothing lighter remains
    }
  }

  // random 2- and 3-row combinations widen the reach of a single RREF
  auto try_combo = [&](size_t count) {
    if (rank < count) return;
    size_t idx[3];
    for (size_t pick = 0; pick < count; ++pick) {
      bool fresh;
      do {
        idx[pick] = size_t(rng.below(rank));
        fresh = true;
        for (size_t q = 0; q < pick; ++q) fresh = fresh && idx[q] != idx[pick];
      } while (!fresh);
    }
    uint32_t scal[3];
    for (size_t pick = 0; pick < count; ++pick) scal[pick] = 1 + uint32_t(rng.below(p - 1));
    ws.combo.assign(n, 0);
    for (size_t pick = 0; pick < count; ++pick) {
      const uint32_t* row = ws.buf.data() + idx[pick] * n;
      for (size_t j = 0; j < n; ++j) {
        ws.combo[j] = red.reduce(ws.combo[j] + uint64_t(scal[pick]) * row[j]);
      }
    }
    int32_t w = weight(ws.combo);
    if (w > 0 && w < best && is_logical(ws.combo.data())) best = w;
  };
  for (size_t i = 0; i < rank; ++i) try_combo(2);
  for (size_t i = 0; i < rank; ++i) try_combo(3);
  return best;
}

}  // namespace

DistanceEstimate estimate_distance(const CodeInstance& c, const DistanceOptions& opt) {
  if (opt.sets < 1 || opt.repeats < 1)
    fail(errc::invalid_argument, "sets and repeats must be positive");
  ParityChecks pc = build_checks(c);
  const size_t n = size_t(c.n());
  int64_t k = c.n() - int64_t(rank_gfp(pc.hx)) - int64_t(rank_gfp(pc.hz));
  if (k <= 0) fail(errc::no_logicals, "code has no logical qudits");

  const Reducer red(c.torus.prime().value());
  SideContext sides[2] = {SideContext(pc.hx, pc.hz), SideContext(pc.hz, pc.hx)};
  const uint64_t salts[2] = {kSideSaltZ, kSideSaltX};

  const int64_t per_side = opt.sets * opt.repeats;
  const int64_t total = 2 * per_side;
  const size_t blocks = size_t(opt.repeats);
  const int threads = resolve_threads(opt.threads);

  // per-(side, block) minima; merged by min, so scheduling cannot matter
  std::vector<int32_t> block_min(2 * blocks, std::numeric_limits<int32_t>::max());
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::vector<int32_t>> local_minima(size_t(threads));

  auto worker = [&](int wi) {
    auto& local = local_minima[size_t(wi)];
    local.assign(2 * blocks, std::numeric_limits<int32_t>::max());
    TrialWorkspace ws;
    for (;;) {
      int64_t tid = next.fetch_add(1);
      if (tid >= total) break;
      int side = int(tid / per_side);
      int64_t t = tid % per_side;
      size_t block = size_t(t / opt.sets);
      uint64_t tseed = mix_u64(opt.seed ^ salts[side], uint64_t(t));
      int32_t w = run_trial(sides[side], n, red, tseed, ws);
      int32_t& slot = local[size_t(side) * blocks + block];
      slot = std::min(slot, w);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }
  for (const auto& local : local_minima) {
    if (local.empty()) continue;
    for (size_t i = 0; i < block_min.size(); ++i) block_min[i] = std::min(block_min[i], local[i]);
  }

  auto side_min = [&](int side) {
    int32_t m = std::numeric_limits<int32_t>::max();
    for (size_t b = 0; b < blocks; ++b) m = std::min(m, block_min[size_t(side) * blocks + b]);
    return m;
  };
  int32_t dz = side_min(0);
  int32_t dx = side_min(1);

  // converged when the trailing 10% of repeat blocks brought no improvement
  size_t tail = std::max<size_t>(1, blocks / 10);
  bool converged = true;
  int32_t running = std::numeric_limits<int32_t>::max();
  for (size_t b = 0; b < blocks; ++b) {
    int32_t combined = std::min(block_min[b], block_min[blocks + b]);
    bool improved = combined < running;
    running = std::min(running, combined);
    if (improved && b + tail >= blocks) converged = false;
  }

  DistanceEstimate out;
  out.d_z_upper = dz;
  out.d_x_upper = dx;
  out.d_upper = std::min(dz, dx);
  out.information_sets = opt.sets;
  out.repeats = opt.repeats;
  out.seed = opt.seed;
  out.converged = converged;
  return out;
}

namespace {

struct ExactSide {
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> cols;  // (row, coeff) per column
  GfpMatrix stab_rref;
  std::vector<size_t> stab_pivots;
  int32_t max_col_nnz = 0;

  ExactSide(const GfpMatrix& kernel_of, const GfpMatrix& stabs) : stab_rref(stabs) {
    stab_pivots = rref_in_place(stab_rref);
    cols.resize(kernel_of.cols());
    for (size_t r = 0; r < kernel_of.rows(); ++r) {
      for (size_t c = 0; c < kernel_of.cols(); ++c) {
        if (kernel_of.at(r, c) != 0) cols[c].push_back({uint32_t(r), kernel_of.at(r, c)});
      }
    }
    for (const auto& col : cols) max_col_nnz = std::max<int32_t>(max_col_nnz, int32_t(col.size()));
  }
};

class ExactSearch {
 public:
  ExactSearch(const ExactSide& side, uint32_t p, size_t n, size_t checks)
      : side_(side), p_(p), n_(n), syndrome_(checks, 0) {}

  bool find(int32_t w) {
    w_ = w;
    support_.assign(size_t(w), 0);
    coeff_.assign(size_t(w), 0);
    return descend(0, 0);
  }

 private:
  void apply(size_t col, uint32_t v) {
    for (auto [row, c] : side_.cols[col]) {
      uint32_t& s = syndrome_[row];
      nnz_ -= (s != 0);
      s = uint32_t((uint64_t(s) + uint64_t(v) * c) % p_);
      nnz_ += (s != 0);
    }
  }

  bool accept() {
    std::vector<uint32_t> v(n_, 0);
    for (int32_t i = 0; i < w_; ++i) v[support_[size_t(i)]] = coeff_[size_t(i)];
    return !in_rowspace(v, side_.stab_rref, side_.stab_pivots);
  }

  bool descend(size_t start, int32_t depth) {
    const int32_t remaining = w_ - depth;
    for (size_t col = start; col + size_t(remaining) <= n_; ++col) {
      support_[size_t(depth)] = col;
      const uint32_t vmax = depth == 0 ? 1 : p_ - 1;  // first coefficient pinned to 1
      for (uint32_t v = 1; v <= vmax; ++v) {
        coeff_[size_t(depth)] = v;
        apply(col, v);
        if (remaining == 1) {
          if (nnz_ == 0 && accept()) return true;
        } else if (nnz_ <= side_.max_col_nnz * (remaining - 1)) {
          if (descend(col + 1, depth + 1)) return true;
        }
        apply(col, p_ - v);  // undo
      }
    }
    return false;
  }

  const ExactSide& side_;
  uint32_t p_;
  size_t n_;
  std::vector<uint32_t> syndrome_;
  int32_t nnz_ = 0;
  int32_t w_ = 0;
  std::vector<size_t> support_;
  std::vector<uint32_t> coeff_;
};

}  // namespace

ExactDistanceResult exact_distance(const CodeInstance& c, int32_t w_max) {
  if (w_max < 1) fail(errc::invalid_argument, "w_max must be positive");
  ParityChecks pc = build_checks(c);
  const uint32_t p = c.torus.prime().value();
  const size_t n = size_t(c.n());

  ExactSide sz(pc.hx, pc.hz);
  ExactSide sx(pc.hz, pc.hx);
  ExactSearch search_z(sz, p, n, pc.hx.rows());
  ExactSearch search_x(sx, p, n, pc.hz.rows());

  for (int32_t w = 1; w <= w_max; ++w) {
    if (search_z.find(w) || search_x.find(w)) return {w, false, w_max};
  }
  return {0, true, w_max};
}

}  // namespace qtc
