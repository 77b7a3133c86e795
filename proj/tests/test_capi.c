#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "permind.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

struct secret_box {
  int n;
  const int* secret;
  int calls;
};

static int answer_from_secret(void* user, const int* guess, int n) {
  struct secret_box* box = (struct secret_box*)user;
  int b = 0;
  ++box->calls;
  for (int i = 0; i < n; ++i) b += guess[i] == box->secret[i];
  return b;
}

static int hang_up(void* user, const int* guess, int n) {
  (void)user;
  (void)guess;
  (void)n;
  return -1;
}

static void test_codes(void) {
  int x[4], y[4], b = -1, w = -1;
  EXPECT(pm_parse_code(4, 4, "1 2 3 4", x) == PM_OK);
  EXPECT(pm_parse_code(4, 4, "1,3,2,4", y) == PM_OK);
  EXPECT(pm_black(4, 4, x, y, &b) == PM_OK && b == 2);
  EXPECT(pm_white(4, 4, x, y, &w) == PM_OK && w == 2);
  EXPECT(pm_parse_code(4, 4, "1 2 2 4", x) == PM_ERR_REPEATED_COLOR);
  EXPECT(strlen(pm_last_error()) > 0);
  EXPECT(pm_parse_code(4, 4, "1 2 3", x) == PM_ERR_LENGTH_MISMATCH);
  EXPECT(pm_parse_code(4, 4, "1 2 3 9", x) == PM_ERR_COLOR_OUT_OF_RANGE);
  EXPECT(pm_parse_code(4, 4, "1 two 3 4", x) == PM_ERR_PARSE);
  EXPECT(pm_parse_code(5, 4, "1 2 3 4 5", x) == PM_ERR_INVALID_CONFIG);
  EXPECT(pm_parse_code(4, 4, NULL, x) == PM_ERR_INVALID_ARGUMENT);
  EXPECT(strcmp(pm_status_name(PM_ERR_INCONSISTENT_FEEDBACK), "InconsistentFeedback") == 0);

  int r1[6], r2[6];
  EXPECT(pm_random_secret(6, 9, 7, r1) == PM_OK);
  EXPECT(pm_random_secret(6, 9, 7, r2) == PM_OK);
  EXPECT(memcmp(r1, r2, sizeof r1) == 0);

  int64_t paper = 0, impl = 0;
  EXPECT(pm_bounds(8, 8, &paper, &impl) == PM_OK && paper == 34);
  EXPECT(pm_bounds(1000, 1000, &paper, &impl) == PM_OK && impl == 12469);
}

static void test_solve(void) {
  const int secret[5] = {3, 5, 1, 2, 4};
  pm_transcript* t = NULL;
  EXPECT(pm_solve(5, 5, secret, NULL, &t) == PM_OK);
  EXPECT(pm_transcript_solved(t));
  EXPECT(pm_transcript_n(t) == 5 && pm_transcript_k(t) == 5);
  int found[5];
  EXPECT(pm_transcript_secret(t, found) == PM_OK);
  EXPECT(memcmp(found, secret, sizeof found) == 0);
  int64_t paper = 0, impl = 0;
  pm_bounds(5, 5, &paper, &impl);
  EXPECT(pm_transcript_queries(t) <= impl);
  int guess[5], black = -1;
  EXPECT(pm_transcript_entry(t, 0, guess, &black) == PM_OK);
  EXPECT(guess[0] == 1 && guess[4] == 5 && black == 0);
  EXPECT(pm_transcript_entry(t, 1000, guess, &black) == PM_ERR_INVALID_ARGUMENT);

  uint64_t consistent = 0;
  EXPECT(pm_count_consistent(t, 0, &consistent) == PM_OK && consistent == 1);

  char* json = NULL;
  EXPECT(pm_transcript_to_json(t, &json) == PM_OK);
  pm_transcript* back = NULL;
  EXPECT(pm_transcript_from_json(json, &back) == PM_OK);
  char* json2 = NULL;
  EXPECT(pm_transcript_to_json(back, &json2) == PM_OK);
  EXPECT(json && json2 && strcmp(json, json2) == 0);
  pm_string_free(json);
  pm_string_free(json2);
  pm_transcript_free(back);
  pm_transcript_free(t);

  EXPECT(pm_transcript_from_json("{\"version\": 2}", &back) == PM_ERR_PARSE);

  const int bad[3] = {1, 1, 2};
  EXPECT(pm_solve(3, 3, bad, NULL, &t) == PM_ERR_REPEATED_COLOR);

  pm_solve_options opts;
  pm_solve_options_init(&opts);
  EXPECT(opts.budget < 0 && opts.trace == NULL);
  opts.budget = 2;
  t = NULL;
  EXPECT(pm_solve(5, 5, secret, &opts, &t) == PM_ERR_BUDGET_EXCEEDED);
  pm_transcript_free(t);
}

static void test_callback(void) {
  const int secret[4] = {6, 2, 5, 1};
  struct secret_box box = {4, secret, 0};
  pm_transcript* t = NULL;
  EXPECT(pm_solve_with(4, 7, answer_from_secret, &box, NULL, &t) == PM_OK);
  int found[4];
  EXPECT(pm_transcript_secret(t, found) == PM_OK && memcmp(found, secret, sizeof found) == 0);
  EXPECT((int64_t)box.calls == pm_transcript_queries(t));
  pm_transcript_free(t);

  t = NULL;
  EXPECT(pm_solve_with(4, 7, hang_up, NULL, NULL, &t) == PM_ERR_STREAM_CLOSED);
  pm_transcript_free(t);
}

static void test_play(void) {
  FILE* in = tmpfile();
  FILE* out = tmpfile();
  fputs("0\n0\n1\n3\n", in);
  rewind(in);
  pm_transcript* t = NULL;
  EXPECT(pm_play(3, 3, in, out, NULL, &t) == PM_OK);
  rewind(out);
  char buf[512] = {0};
  size_t len = fread(buf, 1, sizeof buf - 1, out);
  buf[len] = '\0';
  EXPECT(strcmp(buf, "GUESS 1: 1 2 3\nGUESS 2: 3 1 2\nGUESS 3: 2 1 3\nGUESS 4: 2 3 1\nSECRET: 2 3 1\n") == 0);
  EXPECT(pm_transcript_queries(t) == 4);
  pm_transcript_free(t);
  fclose(in);
  fclose(out);

  in = tmpfile();
  out = tmpfile();
  fputs("1\n1\n0\n0\n0\n", in);
  rewind(in);
  t = NULL;
  EXPECT(pm_play(3, 3, in, out, NULL, &t) == PM_ERR_INCONSISTENT_FEEDBACK);
  pm_transcript_free(t);
  fclose(in);
  fclose(out);

  in = tmpfile();
  out = tmpfile();
  fputs("0\n", in);
  rewind(in);
  EXPECT(pm_play(3, 3, in, out, NULL, NULL) == PM_ERR_STREAM_CLOSED);
  fclose(in);
  fclose(out);
}

static void test_analysis(void) {
  pm_verify_summary s;
  char* json = NULL;
  EXPECT(pm_verify(4, 4, 2, 0, &s, &json) == PM_OK);
  EXPECT(s.secrets_tested == 24 && s.failures == 0 && s.bound_violations == 0);
  EXPECT(json != NULL && strstr(json, "\"secrets_tested\"") != NULL);
  pm_string_free(json);
  EXPECT(pm_verify(6, 6, 1, 10, &s, NULL) == PM_ERR_CAP_EXCEEDED);

  pm_bench_stats b;
  EXPECT(pm_bench(12, 12, 100, 5, 2, &b) == PM_OK);
  EXPECT(b.trials == 100 && b.violations == 0 && b.min <= b.max);
  char* row = NULL;
  EXPECT(pm_bench_csv_row(&b, &row) == PM_OK && strncmp(row, "12,12,100,", 10) == 0);
  pm_string_free(row);
  EXPECT(strncmp(pm_bench_csv_header(), "n,k,trials", 10) == 0);

  pm_reduction r;
  EXPECT(pm_reduction_factor(4, 1, 0, &r, NULL) == PM_OK);
  EXPECT(r.factor_num == 8 && r.factor_den == 3);
  EXPECT(pm_reduction_factor(4, 3, 0, &r, NULL) == PM_ERR_INVALID_CONFIG);
}

int main(void) {
  test_codes();
  test_solve();
  test_callback();
  test_play();
  test_analysis();
  if (failures) {
    fprintf(stderr, "%d C API check(s) failed\n", failures);
    return 1;
  }
  puts("C API checks passed");
  return 0;
}
