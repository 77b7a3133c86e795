#include "permind.h"

#include <cstdlib>
#include <cstring>
#include <istream>
#include <memory>
#include <new>
#include <ostream>
#include <streambuf>
#include <string>

#include "permind/analysis.hpp"
#include "permind/codes.hpp"
#include "permind/error.hpp"
#include "permind/oracle.hpp"
#include "permind/play.hpp"
#include "permind/solver.hpp"

struct pm_transcript {
  permind::Transcript t;
};

namespace {

using namespace permind;

thread_local std::string g_last_error;

pm_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return PM_ERR_INVALID_CONFIG;
    case ErrorCode::LengthMismatch: return PM_ERR_LENGTH_MISMATCH;
    case ErrorCode::ColorOutOfRange: return PM_ERR_COLOR_OUT_OF_RANGE;
    case ErrorCode::RepeatedColor: return PM_ERR_REPEATED_COLOR;
    case ErrorCode::ConfigMismatch: return PM_ERR_CONFIG_MISMATCH;
    case ErrorCode::AlreadyFixed:
    case ErrorCode::ColorAlreadyUsed: return PM_ERR_INVALID_ARGUMENT;
    case ErrorCode::InconsistentFeedback: return PM_ERR_INCONSISTENT_FEEDBACK;
    case ErrorCode::MalformedAnswer: return PM_ERR_MALFORMED_ANSWER;
    case ErrorCode::AnswerOutOfRange: return PM_ERR_ANSWER_OUT_OF_RANGE;
    case ErrorCode::StreamClosed: return PM_ERR_STREAM_CLOSED;
    case ErrorCode::BudgetExceeded: return PM_ERR_BUDGET_EXCEEDED;
    case ErrorCode::CapExceeded: return PM_ERR_CAP_EXCEEDED;
    case ErrorCode::ParseError: return PM_ERR_PARSE;
    case ErrorCode::NoActiveIndex:
    case ErrorCode::InternalInvariantViolation: return PM_ERR_INTERNAL;
  }
  return PM_ERR_INTERNAL;
}

pm_status fail(pm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body and converts exceptions into a status plus pm_last_error().
template <typename Body>
pm_status guarded_call(Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PM_ERR_INTERNAL, e.what());
  }
}

Code code_from(const int* raw, GameConfig cfg) {
  if (!raw) throw Error(ErrorCode::LengthMismatch, "null code");
  return validate_code(std::span<const int>(raw, cfg.length()), cfg);
}

void copy_code(const Code& c, int* out) { std::copy(c.entries().begin(), c.entries().end(), out); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Unbuffered-in, flush-on-sync streambuf over a C stream, so line-oriented
// exchanges never read ahead of the current answer.
class FileBuf : public std::streambuf {
 public:
  explicit FileBuf(FILE* f) : f_(f) {}

 protected:
  int_type underflow() override {
    const int c = std::fgetc(f_);
    if (c == EOF) return traits_type::eof();
    ch_ = static_cast<char>(c);
    setg(&ch_, &ch_, &ch_ + 1);
    return traits_type::to_int_type(ch_);
  }
  int_type overflow(int_type c) override {
    if (traits_type::eq_int_type(c, traits_type::eof())) return traits_type::not_eof(c);
    return std::fputc(c, f_) == EOF ? traits_type::eof() : c;
  }
  std::streamsize xsputn(const char* s, std::streamsize count) override {
    return static_cast<std::streamsize>(std::fwrite(s, 1, static_cast<std::size_t>(count), f_));
  }
  int sync() override { return std::fflush(f_) == 0 ? 0 : -1; }

 private:
  FILE* f_;
  char ch_ = 0;
};

class CallbackCodemaker final : public Codemaker {
 public:
  CallbackCodemaker(GameConfig cfg, pm_answer_fn fn, void* user) : cfg_(cfg), fn_(fn), user_(user) {}

  Feedback answer(const Code& guess) override {
    const int b = fn_(user_, guess.entries().data(), cfg_.n);
    if (b < 0) throw Error(ErrorCode::StreamClosed, "answer callback aborted the game");
    return {b};
  }
  GameConfig config() const override { return cfg_; }

 private:
  GameConfig cfg_;
  pm_answer_fn fn_;
  void* user_;
};

pm_solve_options effective(const pm_solve_options* options) {
  pm_solve_options o;
  pm_solve_options_init(&o);
  if (options) o = *options;
  return o;
}

pm_status run_solve(Codemaker& maker, const pm_solve_options* options, pm_transcript** out) {
  if (!out) return fail(PM_ERR_INVALID_ARGUMENT, "null output pointer");
  const pm_solve_options o = effective(options);
  QueryBudget budget;
  if (o.budget >= 0) budget.limit = o.budget;
  GuardedCodemaker guarded(maker, budget, o.memoize != 0);
  FileBuf trace_buf(o.trace);
  std::ostream trace_stream(&trace_buf);
  SolveOptions so;
  if (o.trace) so.trace = &trace_stream;
  const SolveResult res = solve(guarded, so);
  trace_stream.flush();
  auto t = std::make_unique<pm_transcript>();
  t->t = guarded.transcript();
  t->t.solved = res.transcript.solved;
  t->t.secret = res.transcript.secret;
  *out = t.release();
  return PM_OK;
}

}  // namespace

extern "C" {

const char* pm_status_name(pm_status status) {
  switch (status) {
    case PM_OK: return "OK";
    case PM_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case PM_ERR_INVALID_CONFIG: return "InvalidConfig";
    case PM_ERR_LENGTH_MISMATCH: return "LengthMismatch";
    case PM_ERR_COLOR_OUT_OF_RANGE: return "ColorOutOfRange";
    case PM_ERR_REPEATED_COLOR: return "RepeatedColor";
    case PM_ERR_CONFIG_MISMATCH: return "ConfigMismatch";
    case PM_ERR_INCONSISTENT_FEEDBACK: return "InconsistentFeedback";
    case PM_ERR_MALFORMED_ANSWER: return "MalformedAnswer";
    case PM_ERR_ANSWER_OUT_OF_RANGE: return "AnswerOutOfRange";
    case PM_ERR_STREAM_CLOSED: return "StreamClosed";
    case PM_ERR_BUDGET_EXCEEDED: return "BudgetExceeded";
    case PM_ERR_CAP_EXCEEDED: return "CapExceeded";
    case PM_ERR_PARSE: return "ParseError";
    case PM_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* pm_last_error(void) { return g_last_error.c_str(); }

void pm_string_free(char* s) { std::free(s); }

pm_status pm_parse_code(int n, int k, const char* text, int* out) {
  return guarded_call([&] {
    if (!text || !out) return fail(PM_ERR_INVALID_ARGUMENT, "null argument");
    copy_code(parse_code(text, GameConfig::make(n, k)), out);
    return PM_OK;
  });
}

pm_status pm_black(int n, int k, const int* x, const int* y, int* out) {
  return guarded_call([&] {
    if (!out) return fail(PM_ERR_INVALID_ARGUMENT, "null output pointer");
    const GameConfig cfg = GameConfig::make(n, k);
    *out = black(code_from(x, cfg), code_from(y, cfg));
    return PM_OK;
  });
}

pm_status pm_white(int n, int k, const int* x, const int* y, int* out) {
  return guarded_call([&] {
    if (!out) return fail(PM_ERR_INVALID_ARGUMENT, "null output pointer");
    const GameConfig cfg = GameConfig::make(n, k);
    *out = white(code_from(x, cfg), code_from(y, cfg));
    return PM_OK;
  });
}

pm_status pm_random_secret(int n, int k, uint64_t seed, int* out) {
  return guarded_call([&] {
    if (!out) return fail(PM_ERR_INVALID_ARGUMENT, "null output pointer");
    std::mt19937_64 rng(seed);
    copy_code(random_secret(GameConfig::make(n, k), rng), out);
    return PM_OK;
  });
}

pm_status pm_bounds(int n, int k, int64_t* paper_bound, int64_t* impl_bound) {
  return guarded_call([&] {
    const Bounds b = bounds(GameConfig::make(n, k));
    if (paper_bound) *paper_bound = b.paper;
    if (impl_bound) *impl_bound = b.impl;
    return PM_OK;
  });
}

void pm_solve_options_init(pm_solve_options* options) {
  if (!options) return;
  options->budget = -1;
  options->memoize = 0;
  options->trace = nullptr;
}

pm_status pm_solve(int n, int k, const int* secret, const pm_solve_options* options, pm_transcript** out) {
  return guarded_call([&] {
    StaticCodemaker maker(code_from(secret, GameConfig::make(n, k)));
    return run_solve(maker, options, out);
  });
}

pm_status pm_solve_with(int n, int k, pm_answer_fn answer, void* user, const pm_solve_options* options,
                        pm_transcript** out) {
  return guarded_call([&] {
    if (!answer) return fail(PM_ERR_INVALID_ARGUMENT, "null callback");
    CallbackCodemaker maker(GameConfig::make(n, k), answer, user);
    return run_solve(maker, options, out);
  });
}

pm_status pm_play(int n, int k, FILE* in, FILE* out, const pm_solve_options* options,
                  pm_transcript** out_transcript) {
  return guarded_call([&] {
    if (!in || !out) return fail(PM_ERR_INVALID_ARGUMENT, "null stream");
    const GameConfig cfg = GameConfig::make(n, k);
    const pm_solve_options o = effective(options);
    FileBuf in_buf(in), out_buf(out), trace_buf(o.trace);
    std::istream in_stream(&in_buf);
    std::ostream out_stream(&out_buf);
    std::ostream trace_stream(&trace_buf);
    PlayOptions po;
    if (o.budget >= 0) po.budget.limit = o.budget;
    po.memoize = o.memoize != 0;
    if (o.trace) po.trace = &trace_stream;
    PlayOutcome outcome = play(in_stream, out_stream, cfg, po);
    out_stream.flush();
    trace_stream.flush();
    if (out_transcript) {
      auto t = std::make_unique<pm_transcript>();
      t->t = std::move(outcome.transcript);
      *out_transcript = t.release();
    }
    if (outcome.error) return fail(to_status(*outcome.error), outcome.message);
    return PM_OK;
  });
}

void pm_transcript_free(pm_transcript* t) { delete t; }

int pm_transcript_n(const pm_transcript* t) { return t ? t->t.config.n : 0; }
int pm_transcript_k(const pm_transcript* t) { return t ? t->t.config.k : 0; }
int pm_transcript_solved(const pm_transcript* t) { return t && t->t.solved ? 1 : 0; }
int64_t pm_transcript_queries(const pm_transcript* t) { return t ? t->t.queries : 0; }

pm_status pm_transcript_entry(const pm_transcript* t, size_t i, int* guess, int* black_out) {
  if (!t || i >= t->t.entries.size()) return fail(PM_ERR_INVALID_ARGUMENT, "no such entry");
  if (guess) copy_code(t->t.entries[i].guess, guess);
  if (black_out) *black_out = t->t.entries[i].black;
  return PM_OK;
}

pm_status pm_transcript_secret(const pm_transcript* t, int* out) {
  if (!t || !out) return fail(PM_ERR_INVALID_ARGUMENT, "null argument");
  if (!t->t.secret) return fail(PM_ERR_INVALID_ARGUMENT, "game not solved");
  copy_code(*t->t.secret, out);
  return PM_OK;
}

pm_status pm_transcript_to_json(const pm_transcript* t, char** json) {
  return guarded_call([&] {
    if (!t || !json) return fail(PM_ERR_INVALID_ARGUMENT, "null argument");
    *json = dup_string(transcript_to_json(t->t));
    return PM_OK;
  });
}

pm_status pm_transcript_from_json(const char* json, pm_transcript** out) {
  return guarded_call([&] {
    if (!json || !out) return fail(PM_ERR_INVALID_ARGUMENT, "null argument");
    auto t = std::make_unique<pm_transcript>();
    t->t = transcript_from_json(json);
    *out = t.release();
    return PM_OK;
  });
}

pm_status pm_count_consistent(const pm_transcript* t, uint64_t cap, uint64_t* out) {
  return guarded_call([&] {
    if (!t || !out) return fail(PM_ERR_INVALID_ARGUMENT, "null argument");
    *out = count_consistent(t->t, cap ? cap : kDefaultEnumerationCap);
    return PM_OK;
  });
}

pm_status pm_verify(int n, int k, unsigned threads, uint64_t cap, pm_verify_summary* summary, char** json) {
  return guarded_call([&] {
    VerifyOptions vo;
    vo.threads = threads;
    if (cap) vo.cap = cap;
    const VerificationReport r = verify_exhaustive(GameConfig::make(n, k), vo);
    if (summary) {
      summary->secrets_tested = r.secrets_tested;
      summary->failures = r.failures.size();
      summary->max_queries = r.max_queries;
      summary->mean_queries = r.mean_queries;
      summary->bound = r.bound;
      summary->paper_bound = r.paper_bound;
      summary->bound_violations = r.bound_violations;
      summary->paper_bound_excess = r.paper_bound_excess;
      summary->fallback_invocations = r.fallback_invocations;
    }
    if (json) *json = dup_string(to_json(r));
    return PM_OK;
  });
}

namespace {

BenchStats from_c(const pm_bench_stats& c) {
  BenchStats s;
  s.config = GameConfig{c.n, c.k};
  s.trials = c.trials;
  s.min = c.min;
  s.mean = c.mean;
  s.max = c.max;
  s.paper_bound = c.paper_bound;
  s.impl_bound = c.impl_bound;
  s.violations = c.violations;
  s.fallbacks = c.fallbacks;
  s.paper_bound_excess = c.paper_bound_excess;
  s.max_seconds = c.max_seconds;
  return s;
}

}  // namespace

pm_status pm_bench(int n, int k, uint64_t trials, uint64_t seed, unsigned threads, pm_bench_stats* out) {
  return guarded_call([&] {
    if (!out) return fail(PM_ERR_INVALID_ARGUMENT, "null output pointer");
    BenchOptions bo;
    bo.trials = trials;
    bo.seed = seed;
    bo.threads = threads;
    const BenchStats s = bench(GameConfig::make(n, k), bo);
    *out = pm_bench_stats{s.config.n, s.config.k, s.trials,      s.min,        s.mean,
                          s.max,      s.paper_bound, s.impl_bound, s.violations, s.fallbacks,
                          s.paper_bound_excess, s.max_seconds};
    return PM_OK;
  });
}

const char* pm_bench_csv_header(void) {
  static const std::string header = bench_csv_header();
  return header.c_str();
}

pm_status pm_bench_csv_row(const pm_bench_stats* stats, char** row) {
  return guarded_call([&] {
    if (!stats || !row) return fail(PM_ERR_INVALID_ARGUMENT, "null argument");
    *row = dup_string(to_csv_row(from_c(*stats)));
    return PM_OK;
  });
}

pm_status pm_bench_json(const pm_bench_stats* stats, char** json) {
  return guarded_call([&] {
    if (!stats || !json) return fail(PM_ERR_INVALID_ARGUMENT, "null argument");
    *json = dup_string(to_json(from_c(*stats)));
    return PM_OK;
  });
}

pm_status pm_reduction_factor(int n, int depth, int fixed_second, pm_reduction* out, char** json) {
  return guarded_call([&] {
    ReductionOptions ro;
    ro.mode = fixed_second ? ReductionMode::FixedSecond : ReductionMode::Adaptive;
    const ReductionResult r = reduction_factor(n, depth, ro);
    if (out) *out = pm_reduction{r.worst_factor.num, r.worst_factor.den, r.worst_factor.value()};
    if (json) *json = dup_string(to_json(r));
    return PM_OK;
  });
}

}  // extern "C"
