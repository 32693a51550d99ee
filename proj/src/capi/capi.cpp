#include "qtc/qtc.h"

#include <cstring>
#include <new>
#include <string>

#include "core/analysis.hpp"
#include "core/csscode.hpp"
#include "core/distance.hpp"
#include "core/error.hpp"
#include "core/groebner.hpp"
#include "core/parser.hpp"
#include "core/records.hpp"
#include "core/search.hpp"

struct qtc_code {
  qtc::CodeInstance instance;
};

struct qtc_records {
  std::vector<qtc::CodeRecord> rows;
};

namespace {

thread_local std::string t_last_error;

qtc_status status_from(const qtc::error& e) {
  t_last_error = e.what();
  switch (e.code()) {
    case qtc::errc::parse:
      return QTC_ERROR_PARSE;
    case qtc::errc::no_logicals:
      return QTC_ERROR_NO_LOGICALS;
    case qtc::errc::not_finite_quotient:
      return QTC_ERROR_NOT_FINITE;
    case qtc::errc::io:
      return QTC_ERROR_IO;
    case qtc::errc::interrupted:
      return QTC_ERROR_INTERRUPTED;
    case qtc::errc::internal:
      return QTC_ERROR_INTERNAL;
    default:
      return QTC_ERROR_INVALID_ARGUMENT;
  }
}

template <typename Fn>
qtc_status guarded(Fn&& fn) {
  try {
    fn();
    return QTC_OK;
  } catch (const qtc::error& e) {
    return status_from(e);
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return QTC_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return QTC_ERROR_INTERNAL;
  }
}

qtc_status require(bool ok, const char* msg) {
  if (ok) return QTC_OK;
  t_last_error = msg;
  return QTC_ERROR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_view(const qtc::CodeRecord& r, qtc_record_view* out) {
  out->p = r.p;
  out->n = r.n;
  out->k = r.k;
  out->d = r.d_upper;
  out->f = r.f.c_str();
  out->g = r.g.c_str();
  out->alpha = r.alpha;
  out->beta = r.beta;
  out->gamma = r.gamma;
  out->kd2_over_n = r.kd2_over_n;
  out->sets = r.sets;
  out->repeats = r.repeats;
  out->seed = r.seed;
  out->converged = r.converged ? 1 : 0;
}

qtc_fit_result fit_out(const qtc::FitResult& f) {
  return {f.slope, f.intercept, f.r_squared, int64_t(f.points)};
}

}  // namespace

extern "C" {

const char* qtc_version(void) { return "1.0.0"; }

const char* qtc_last_error(void) { return t_last_error.c_str(); }

void qtc_string_free(char* s) { delete[] s; }

qtc_status qtc_code_create(int64_t p, const char* f, const char* g, int64_t alpha, int64_t beta,
                           int64_t gamma, qtc_code** out) {
  if (auto s = require(f && g && out, "null argument")) return s;
  return guarded([&] {
    qtc::PrimeModulus mod(p);
    qtc::LaurentPoly fp = qtc::parse_poly(f, mod);
    qtc::LaurentPoly gp = qtc::parse_poly(g, mod);
    qtc::TorusSpec torus(mod, alpha, beta, gamma);
    *out = new qtc_code{qtc::CodeInstance(std::move(fp), std::move(gp), torus)};
  });
}

void qtc_code_free(qtc_code* code) { delete code; }

qtc_status qtc_code_compute_params(const qtc_code* code, qtc_code_params* out) {
  if (auto s = require(code && out, "null argument")) return s;
  return guarded([&] {
    const qtc::CodeInstance& c = code->instance;
    qtc::ParityChecks pc = qtc::build_checks(c);
    out->n = c.n();
    out->k = qtc::k_twisted(c.f, c.g, c.torus);
    out->k_oracle = c.n() - int64_t(qtc::rank_gfp(pc.hx)) - int64_t(qtc::rank_gfp(pc.hz));
    out->weight_max = qtc::max_row_weight(pc);
    out->range = qtc::stabilizer_range(c);
  });
}

qtc_status qtc_kmax(int64_t p, const char* f, const char* g, int64_t* k_max, int32_t* finite) {
  if (auto s = require(f && g && k_max && finite, "null argument")) return s;
  return guarded([&] {
    qtc::PrimeModulus mod(p);
    auto result = qtc::k_max(qtc::parse_poly(f, mod), qtc::parse_poly(g, mod));
    *finite = result.has_value() ? 1 : 0;
    *k_max = result.value_or(0);
  });
}

qtc_status qtc_poly_canonical(int64_t p, const char* text, char** out) {
  if (auto s = require(text && out, "null argument")) return s;
  return guarded([&] {
    qtc::PrimeModulus mod(p);
    *out = dup_string(qtc::parse_poly(text, mod).str());
  });
}

qtc_status qtc_code_checks_text(const qtc_code* code, int32_t z_side, char** out) {
  if (auto s = require(code && out, "null argument")) return s;
  return guarded([&] {
    qtc::ParityChecks pc = qtc::build_checks(code->instance);
    *out = dup_string(qtc::matrix_text(z_side ? pc.hz : pc.hx));
  });
}

qtc_status qtc_code_exact_distance(const qtc_code* code, int32_t w_max, int32_t* distance,
                                   int32_t* exceeds) {
  if (auto s = require(code && distance && exceeds, "null argument")) return s;
  return guarded([&] {
    qtc::ExactDistanceResult r = qtc::exact_distance(code->instance, w_max);
    *exceeds = r.exceeds ? 1 : 0;
    *distance = r.exceeds ? 0 : r.value;
  });
}

qtc_status qtc_code_estimate_distance(const qtc_code* code, const qtc_distance_options* options,
                                      qtc_distance_estimate* out) {
  if (auto s = require(code && options && out, "null argument")) return s;
  return guarded([&] {
    qtc::DistanceOptions opt;
    opt.sets = options->sets;
    opt.repeats = options->repeats;
    opt.seed = options->seed;
    opt.threads = options->threads;
    qtc::DistanceEstimate est = qtc::estimate_distance(code->instance, opt);
    out->d_upper = est.d_upper;
    out->d_x_upper = est.d_x_upper;
    out->d_z_upper = est.d_z_upper;
    out->sets = est.information_sets;
    out->repeats = est.repeats;
    out->seed = est.seed;
    out->converged = est.converged ? 1 : 0;
  });
}

qtc_status qtc_records_create(qtc_records** out) {
  if (auto s = require(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = new qtc_records(); });
}

qtc_status qtc_records_append(qtc_records* records, const qtc_record_view* view) {
  if (auto s = require(records && view && view->f && view->g, "null argument")) return s;
  return guarded([&] {
    if (view->n <= 0 || view->k <= 0 || view->d <= 0)
      qtc::fail(qtc::errc::invalid_argument, "record requires positive n, k, d");
    records->rows.push_back(qtc::CodeRecord::make(view->p, view->n, view->k, view->d, view->f,
                                                  view->g, view->alpha, view->beta, view->gamma,
                                                  view->sets, view->repeats, view->seed,
                                                  view->converged != 0));
  });
}

size_t qtc_records_size(const qtc_records* records) { return records ? records->rows.size() : 0; }

qtc_status qtc_records_get(const qtc_records* records, size_t index, qtc_record_view* out) {
  if (auto s = require(records && out, "null argument")) return s;
  if (auto s = require(index < records->rows.size(), "record index out of range")) return s;
  fill_view(records->rows[index], out);
  return QTC_OK;
}

qtc_status qtc_records_read_csv(const char* path, qtc_records** out) {
  if (auto s = require(path && out, "null argument")) return s;
  return guarded([&] { *out = new qtc_records{qtc::read_records_csv(path)}; });
}

qtc_status qtc_records_write_csv(const qtc_records* records, const char* path) {
  if (auto s = require(records && path, "null argument")) return s;
  return guarded([&] { qtc::write_records_csv(records->rows, path); });
}

qtc_status qtc_records_pareto(const qtc_records* records, qtc_records** out) {
  if (auto s = require(records && out, "null argument")) return s;
  return guarded([&] { *out = new qtc_records{qtc::pareto_front(records->rows)}; });
}

void qtc_records_free(qtc_records* records) { delete records; }

qtc_status qtc_search_run(const qtc_search_options* options, qtc_progress_fn progress, void* user,
                          qtc_records** out, qtc_search_stats* stats) {
  if (auto s = require(options && out, "null argument")) return s;
  return guarded([&] {
    qtc::SearchSpace space{.p = qtc::PrimeModulus(options->p),
                           .n_min = options->n_min,
                           .n_max = options->n_max};
    if (options->coefficients) {
      std::string list = options->coefficients;
      size_t start = 0;
      while (start <= list.size() && !list.empty()) {
        size_t pos = list.find(',', start);
        std::string tok = list.substr(start, pos == std::string::npos ? pos : pos - start);
        if (!tok.empty()) space.coefficients.push_back(uint32_t(std::stoul(tok)));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
    }
    space.prune = {options->prune_sets, options->prune_repeats};
    space.full = {options->sets, options->repeats};
    space.seed = options->seed;
    space.threads = options->threads;
    if (options->resume_dir) space.checkpoint_dir = options->resume_dir;

    std::function<void(const qtc::SearchStats&)> cb;
    if (progress) {
      cb = [&](const qtc::SearchStats& s) {
        qtc_search_stats snap{s.pairs_raw,  s.degenerate, s.duplicates,  s.visited,
                              s.to_failed,  s.k_zero,     s.pruned,      s.survivors,
                              s.confirmed,  s.emitted,    s.d_decreases, s.failures,
                              s.chunks_total, s.chunks_done, s.interrupted ? 1 : 0};
        progress(&snap, user);
      };
    }
    qtc::SearchResult result = qtc::run_search(space, cb);
    *out = new qtc_records{std::move(result.records)};
    if (stats) {
      const qtc::SearchStats& s = result.stats;
      *stats = {s.pairs_raw,  s.degenerate, s.duplicates,  s.visited,
                s.to_failed,  s.k_zero,     s.pruned,      s.survivors,
                s.confirmed,  s.emitted,    s.d_decreases, s.failures,
                s.chunks_total, s.chunks_done, s.interrupted ? 1 : 0};
    }
  });
}

void qtc_search_request_stop(void) { qtc::request_search_stop(); }

void qtc_search_reset_stop(void) { qtc::reset_search_stop(); }

qtc_status qtc_fit_global(const qtc_records* records, qtc_fit_result* out) {
  if (auto s = require(records && out, "null argument")) return s;
  return guarded([&] { *out = fit_out(qtc::global_fit(records->rows)); });
}

qtc_status qtc_fit_per_p(const qtc_records* records, qtc_fit_result* out_fits, int64_t* out_ps,
                         size_t cap, size_t* count, qtc_fit_result* slopes_vs_lnp) {
  if (auto s = require(records && count, "null argument")) return s;
  return guarded([&] {
    qtc::PerPAnalysis a = qtc::per_p_slopes(records->rows);
    *count = a.per_p.size();
    for (size_t i = 0; i < a.per_p.size() && i < cap; ++i) {
      if (out_fits) out_fits[i] = fit_out(a.per_p[i].fit);
      if (out_ps) out_ps[i] = a.per_p[i].p;
    }
    if (slopes_vs_lnp) {
      if (!a.slope_vs_lnp)
        qtc::fail(qtc::errc::degenerate_input, "need per-p fits from at least two primes");
      *slopes_vs_lnp = fit_out(*a.slope_vs_lnp);
    }
  });
}

qtc_status qtc_plot_svg(const qtc_records* records, int32_t mode, const char* path) {
  if (auto s = require(records && path, "null argument")) return s;
  return guarded([&] {
    qtc::write_scatter_svg(records->rows, mode == 0 ? qtc::PlotMode::global : qtc::PlotMode::per_p,
                           path);
  });
}

}  // extern "C"
