/*
 * C interface to the permind codebreaker library.
 *
 * Codes are passed as arrays of n ints holding 1-based colors 1..k. Every
 * function returns a pm_status; on failure pm_last_error() describes the
 * problem (thread-local, valid until the next failing call on the thread).
 * Strings returned through char** are owned by the caller and released with
 * pm_string_free().
 */
#ifndef PERMIND_H
#define PERMIND_H

#include <stddef.h>
#include <stdint.h>
#include <stdio.h>

#if defined(PERMIND_BUILDING_LIBRARY)
#define PERMIND_API __attribute__((visibility("default")))
#else
#define PERMIND_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pm_status {
  PM_OK = 0,
  PM_ERR_INVALID_ARGUMENT,
  PM_ERR_INVALID_CONFIG,
  PM_ERR_LENGTH_MISMATCH,
  PM_ERR_COLOR_OUT_OF_RANGE,
  PM_ERR_REPEATED_COLOR,
  PM_ERR_CONFIG_MISMATCH,
  PM_ERR_INCONSISTENT_FEEDBACK,
  PM_ERR_MALFORMED_ANSWER,
  PM_ERR_ANSWER_OUT_OF_RANGE,
  PM_ERR_STREAM_CLOSED,
  PM_ERR_BUDGET_EXCEEDED,
  PM_ERR_CAP_EXCEEDED,
  PM_ERR_PARSE,
  PM_ERR_INTERNAL
} pm_status;

PERMIND_API const char* pm_status_name(pm_status status);
PERMIND_API const char* pm_last_error(void);
PERMIND_API void pm_string_free(char* s);

/* ---- codes ---------------------------------------------------------- */

/* Parses "4 1 2 3" into out[0..n). */
PERMIND_API pm_status pm_parse_code(int n, int k, const char* text, int* out);
PERMIND_API pm_status pm_black(int n, int k, const int* x, const int* y, int* out);
PERMIND_API pm_status pm_white(int n, int k, const int* x, const int* y, int* out);
/* Seeded Fisher-Yates over 1..k truncated to n. */
PERMIND_API pm_status pm_random_secret(int n, int k, uint64_t seed, int* out);
PERMIND_API pm_status pm_bounds(int n, int k, int64_t* paper_bound, int64_t* impl_bound);

/* ---- games ---------------------------------------------------------- */

typedef struct pm_transcript pm_transcript;

typedef struct pm_solve_options {
  int64_t budget; /* < 0: unlimited */
  int memoize;    /* nonzero: repeated guesses answered from the record */
  FILE* trace;    /* "Q<seq> <guess> -> <black> [phase]" lines, or NULL */
} pm_solve_options;

PERMIND_API void pm_solve_options_init(pm_solve_options* options);

/* Solves against a fixed secret. options may be NULL. */
PERMIND_API pm_status pm_solve(int n, int k, const int* secret, const pm_solve_options* options,
                               pm_transcript** out);

/* Codemaker callback: returns the black count for guess[0..n), or a negative
 * value to abort the game (reported as PM_ERR_STREAM_CLOSED). */
typedef int (*pm_answer_fn)(void* user, const int* guess, int n);

PERMIND_API pm_status pm_solve_with(int n, int k, pm_answer_fn answer, void* user,
                                    const pm_solve_options* options, pm_transcript** out);

/* Interactive game: writes "GUESS <seq>: ..." lines to `out`, reads one
 * integer per line from `in`, finishes with "SECRET: ..." or "ERROR: ...".
 * *out_transcript (optional) receives the exchange even on failure. */
PERMIND_API pm_status pm_play(int n, int k, FILE* in, FILE* out, const pm_solve_options* options,
                              pm_transcript** out_transcript);

PERMIND_API void pm_transcript_free(pm_transcript* t);
PERMIND_API int pm_transcript_n(const pm_transcript* t);
PERMIND_API int pm_transcript_k(const pm_transcript* t);
PERMIND_API int pm_transcript_solved(const pm_transcript* t);
PERMIND_API int64_t pm_transcript_queries(const pm_transcript* t);
/* Copies the guess and answer of 0-based entry i. */
PERMIND_API pm_status pm_transcript_entry(const pm_transcript* t, size_t i, int* guess, int* black);
/* Copies the secret; PM_ERR_INVALID_ARGUMENT when the game was not solved. */
PERMIND_API pm_status pm_transcript_secret(const pm_transcript* t, int* out);
PERMIND_API pm_status pm_transcript_to_json(const pm_transcript* t, char** json);
PERMIND_API pm_status pm_transcript_from_json(const char* json, pm_transcript** out);

/* ---- analysis ------------------------------------------------------- */

/* Secrets consistent with every entry. cap == 0 selects the default cap. */
PERMIND_API pm_status pm_count_consistent(const pm_transcript* t, uint64_t cap, uint64_t* out);

typedef struct pm_verify_summary {
  uint64_t secrets_tested;
  uint64_t failures;
  int64_t max_queries;
  double mean_queries;
  int64_t bound;
  int64_t paper_bound;
  uint64_t bound_violations;
  uint64_t paper_bound_excess;
  uint64_t fallback_invocations;
} pm_verify_summary;

/* Exhaustive verification; json (optional) receives the full report. */
PERMIND_API pm_status pm_verify(int n, int k, unsigned threads, uint64_t cap, pm_verify_summary* summary,
                                char** json);

typedef struct pm_bench_stats {
  int n;
  int k;
  uint64_t trials;
  int64_t min;
  double mean;
  int64_t max;
  int64_t paper_bound;
  int64_t impl_bound;
  uint64_t violations;
  uint64_t fallbacks;
  uint64_t paper_bound_excess;
  double max_seconds;
} pm_bench_stats;

PERMIND_API pm_status pm_bench(int n, int k, uint64_t trials, uint64_t seed, unsigned threads,
                               pm_bench_stats* out);
PERMIND_API const char* pm_bench_csv_header(void);
PERMIND_API pm_status pm_bench_csv_row(const pm_bench_stats* stats, char** row);
PERMIND_API pm_status pm_bench_json(const pm_bench_stats* stats, char** json);

typedef struct pm_reduction {
  uint64_t factor_num;
  uint64_t factor_den;
  double factor;
} pm_reduction;

/* depth 1 or 2; fixed_second != 0 selects one second query for all first
 * answers instead of an adaptive one. */
PERMIND_API pm_status pm_reduction_factor(int n, int depth, int fixed_second, pm_reduction* out, char** json);

#ifdef __cplusplus
}
#endif

#endif /* PERMIND_H */
