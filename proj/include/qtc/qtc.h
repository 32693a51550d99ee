/*
 * qtc — generalized Z_p toric codes on twisted tori.
 *
 * C API of the shared library. All functions return qtc_status; on failure
 * a thread-local message is available via qtc_last_error(). Objects are
 * opaque handles released with their matching _free function. Strings
 * returned through char** are owned by the caller and released with
 * qtc_string_free. Pointers inside qtc_record_view remain valid until the
 * owning qtc_records handle is modified or freed.
 */
#ifndef QTC_H
#define QTC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef QTC_API
#define QTC_API __attribute__((visibility("default")))
#endif

typedef enum qtc_status {
  QTC_OK = 0,
  QTC_ERROR_INVALID_ARGUMENT = 1,
  QTC_ERROR_PARSE = 2,
  QTC_ERROR_NO_LOGICALS = 3,
  QTC_ERROR_NOT_FINITE = 4,
  QTC_ERROR_IO = 5,
  QTC_ERROR_INTERRUPTED = 6,
  QTC_ERROR_INTERNAL = 7
} qtc_status;

QTC_API const char* qtc_version(void);

/* Message for the most recent failure on this thread. */
QTC_API const char* qtc_last_error(void);

QTC_API void qtc_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Code instances                                                      */
/* ------------------------------------------------------------------ */

typedef struct qtc_code qtc_code;

/*
 * Builds a code from polynomial text (grammar: terms like "1+2x+5y",
 * "1+y-x^-1*y", exponents "x^-2", explicit "*" between variables) and the
 * twisted torus a1 = (0, alpha), a2 = (beta, gamma). gamma may be any
 * integer; it is canonicalized into [0, alpha).
 */
QTC_API qtc_status qtc_code_create(int64_t p, const char* f, const char* g, int64_t alpha,
                                   int64_t beta, int64_t gamma, qtc_code** out);
QTC_API void qtc_code_free(qtc_code* code);

typedef struct qtc_code_params {
  int64_t n;           /* number of physical qudits, 2*alpha*beta */
  int64_t k;           /* logical dimension via the Groebner route */
  int64_t k_oracle;    /* logical dimension via rank-nullity */
  int32_t weight_max;  /* largest stabilizer weight (at most 6) */
  double range;        /* geometric diameter of one stabilizer */
} qtc_code_params;

QTC_API qtc_status qtc_code_compute_params(const qtc_code* code, qtc_code_params* out);

/*
 * k_max = 2 dim of the Laurent quotient by <f, g>. When the quotient is
 * infinite (f, g share a factor; no topological order) *finite is 0 and
 * *k_max is undefined.
 */
QTC_API qtc_status qtc_kmax(int64_t p, const char* f, const char* g, int64_t* k_max,
                            int32_t* finite);

/* Canonical rendering of polynomial text (parse then print). */
QTC_API qtc_status qtc_poly_canonical(int64_t p, const char* text, char** out);

/*
 * Parity-check matrix as text, one row per line, space-separated residues.
 * z_side = 0 gives H_X, nonzero gives H_Z.
 */
QTC_API qtc_status qtc_code_checks_text(const qtc_code* code, int32_t z_side, char** out);

/* ------------------------------------------------------------------ */
/* Distance                                                            */
/* ------------------------------------------------------------------ */

/*
 * Exhaustive search up to w_max. If no logical vector of weight <= w_max
 * exists, *exceeds is set and *distance is undefined.
 */
QTC_API qtc_status qtc_code_exact_distance(const qtc_code* code, int32_t w_max, int32_t* distance,
                                           int32_t* exceeds);

typedef struct qtc_distance_options {
  int64_t sets;    /* information sets per repeat */
  int64_t repeats; /* repeat blocks */
  uint64_t seed;
  int32_t threads; /* 0 = hardware concurrency */
} qtc_distance_options;

typedef struct qtc_distance_estimate {
  int32_t d_upper;
  int32_t d_x_upper;
  int32_t d_z_upper;
  int64_t sets;
  int64_t repeats;
  uint64_t seed;
  int32_t converged;
} qtc_distance_estimate;

/*
 * Randomized information-set upper bound. Deterministic for fixed
 * (code, options), independent of thread count. Fails with
 * QTC_ERROR_NO_LOGICALS when k = 0.
 */
QTC_API qtc_status qtc_code_estimate_distance(const qtc_code* code,
                                              const qtc_distance_options* options,
                                              qtc_distance_estimate* out);

/* ------------------------------------------------------------------ */
/* Record collections                                                  */
/* ------------------------------------------------------------------ */

typedef struct qtc_records qtc_records;

typedef struct qtc_record_view {
  int64_t p, n, k;
  int32_t d;
  const char* f;
  const char* g;
  int64_t alpha, beta, gamma;
  double kd2_over_n; /* derived from k, d, n; ignored on append */
  int64_t sets, repeats;
  uint64_t seed;
  int32_t converged;
} qtc_record_view;

QTC_API qtc_status qtc_records_create(qtc_records** out);
QTC_API qtc_status qtc_records_append(qtc_records* records, const qtc_record_view* view);
QTC_API size_t qtc_records_size(const qtc_records* records);
QTC_API qtc_status qtc_records_get(const qtc_records* records, size_t index,
                                   qtc_record_view* out);
QTC_API qtc_status qtc_records_read_csv(const char* path, qtc_records** out);
QTC_API qtc_status qtc_records_write_csv(const qtc_records* records, const char* path);
/* Rows whose kd^2/n strictly exceeds every kept row with smaller n. */
QTC_API qtc_status qtc_records_pareto(const qtc_records* records, qtc_records** out);
QTC_API void qtc_records_free(qtc_records* records);

/* ------------------------------------------------------------------ */
/* Search                                                              */
/* ------------------------------------------------------------------ */

typedef struct qtc_search_options {
  int64_t p;
  int64_t n_min, n_max; /* even, inclusive */
  int64_t prune_sets, prune_repeats;
  int64_t sets, repeats; /* full confirmation budget */
  uint64_t seed;
  int32_t threads;          /* 0 = hardware concurrency */
  const char* resume_dir;   /* checkpoint directory, NULL disables */
  const char* coefficients; /* comma-separated residues, NULL = all of [1,p) */
} qtc_search_options;

typedef struct qtc_search_stats {
  uint64_t pairs_raw, degenerate, duplicates, visited, to_failed, k_zero, pruned, survivors,
      confirmed, emitted, d_decreases, failures, chunks_total, chunks_done;
  int32_t interrupted;
} qtc_search_stats;

typedef void (*qtc_progress_fn)(const qtc_search_stats* stats, void* user);

/*
 * Enumerates the weight-6 family over all twisted tori in the range and
 * returns the confirmed records. Deterministic for a fixed option set
 * regardless of threads. If qtc_search_request_stop was called the partial
 * result is returned with stats->interrupted set.
 */
QTC_API qtc_status qtc_search_run(const qtc_search_options* options, qtc_progress_fn progress,
                                  void* user, qtc_records** out, qtc_search_stats* stats);

/* Async-signal-safe stop request honored at chunk boundaries. */
QTC_API void qtc_search_request_stop(void);
QTC_API void qtc_search_reset_stop(void);

/* ------------------------------------------------------------------ */
/* Fits and plots                                                      */
/* ------------------------------------------------------------------ */

typedef struct qtc_fit_result {
  double slope;
  double intercept;
  double r_squared; /* NaN when undefined (all y equal) */
  int64_t points;
} qtc_fit_result;

/* kd^2/n against n ln p over all records; needs at least two distinct p. */
QTC_API qtc_status qtc_fit_global(const qtc_records* records, qtc_fit_result* out);

/*
 * One fit of (n, kd^2/n) per prime, written into out_fits/out_ps (up to
 * cap entries; *count receives the total). Primes with fewer than two
 * usable rows are skipped. When two or more per-p fits exist and
 * slopes_vs_lnp is non-NULL it receives the regression of slope on ln p.
 */
QTC_API qtc_status qtc_fit_per_p(const qtc_records* records, qtc_fit_result* out_fits,
                                 int64_t* out_ps, size_t cap, size_t* count,
                                 qtc_fit_result* slopes_vs_lnp);

/* mode 0: x = n ln p with the global fit; mode 1: x = n with per-p fits. */
QTC_API qtc_status qtc_plot_svg(const qtc_records* records, int32_t mode, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* QTC_H */
