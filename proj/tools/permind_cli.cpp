#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "permind.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitBoundViolation = 4;
constexpr int kExitCap = 5;

int exit_code(pm_status s) {
  switch (s) {
    case PM_OK: return kExitOk;
    case PM_ERR_INVALID_ARGUMENT:
    case PM_ERR_INVALID_CONFIG:
    case PM_ERR_LENGTH_MISMATCH:
    case PM_ERR_COLOR_OUT_OF_RANGE:
    case PM_ERR_REPEATED_COLOR:
    case PM_ERR_CONFIG_MISMATCH:
    case PM_ERR_PARSE: return kExitUsage;
    case PM_ERR_INCONSISTENT_FEEDBACK: return kExitInconsistent;
    case PM_ERR_BUDGET_EXCEEDED:
    case PM_ERR_CAP_EXCEEDED: return kExitCap;
    default: return kExitFailure;
  }
}

int report(pm_status s) {
  std::cerr << "error: " << pm_last_error() << '\n';
  return exit_code(s);
}

struct CString {
  char* p = nullptr;
  ~CString() { pm_string_free(p); }
};

struct TranscriptHandle {
  pm_transcript* p = nullptr;
  ~TranscriptHandle() { pm_transcript_free(p); }
};

// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

struct Common {
  int n = 0;
  int k = 0;
};

void add_shape(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "code length")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--k", c.k, "number of colors (defaults to n)")->check(CLI::PositiveNumber);
}

void settle(Common& c) {
  if (c.k == 0) c.k = c.n;
}

struct GameFlags {
  bool memoize = false;
  std::optional<std::int64_t> budget;
  bool trace = false;

  pm_solve_options options() const {
    pm_solve_options o;
    pm_solve_options_init(&o);
    o.memoize = memoize ? 1 : 0;
    if (budget) o.budget = *budget;
    o.trace = trace ? stderr : nullptr;
    return o;
  }
};

void add_game_flags(CLI::App* cmd, GameFlags& g) {
  cmd->add_flag("--memoize", g.memoize, "answer repeated guesses from the record");
  cmd->add_option("--budget", g.budget, "maximum number of queries")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--trace", g.trace, "log every query to stderr");
}

int run_solve(Common c, const std::optional<std::string>& secret_text, const std::optional<std::uint64_t>& seed,
              const GameFlags& g, const std::string& format, const std::string& output) {
  settle(c);
  std::vector<int> secret(static_cast<std::size_t>(c.n));
  pm_status s = secret_text ? pm_parse_code(c.n, c.k, secret_text->c_str(), secret.data())
                            : pm_random_secret(c.n, c.k, *seed, secret.data());
  if (s != PM_OK) return report(s);

  const pm_solve_options o = g.options();
  TranscriptHandle t;
  s = pm_solve(c.n, c.k, secret.data(), &o, &t.p);
  if (s != PM_OK) return report(s);

  Sink sink(output);
  if (format == "json") {
    CString json;
    if ((s = pm_transcript_to_json(t.p, &json.p)) != PM_OK) return report(s);
    sink.out() << json.p << '\n';
  } else {
    std::vector<int> guess(static_cast<std::size_t>(c.n));
    const auto q = static_cast<std::size_t>(pm_transcript_queries(t.p));
    for (std::size_t i = 0; i < q; ++i) {
      int black = 0;
      pm_transcript_entry(t.p, i, guess.data(), &black);
      sink.out() << "GUESS " << i + 1 << ": " << join(guess) << " -> " << black << '\n';
    }
    pm_transcript_secret(t.p, guess.data());
    sink.out() << "SECRET: " << join(guess) << '\n' << "queries: " << q << '\n';
  }
  return kExitOk;
}

int run_play(Common c, const GameFlags& g, const std::string& transcript_path) {
  settle(c);
  const pm_solve_options o = g.options();
  TranscriptHandle t;
  const pm_status s = pm_play(c.n, c.k, stdin, stdout, &o, &t.p);
  std::fflush(stdout);
  if (!transcript_path.empty() && t.p) {
    CString json;
    if (pm_transcript_to_json(t.p, &json.p) == PM_OK) {
      std::ofstream f(transcript_path, std::ios::binary);
      f << json.p << '\n';
    }
  }
  if (s != PM_OK) {
    std::cerr << "error: " << pm_last_error() << '\n';
    return exit_code(s);
  }
  return kExitOk;
}

int run_verify(Common c, unsigned threads, std::uint64_t cap, const std::string& format, const std::string& output) {
  settle(c);
  pm_verify_summary v{};
  CString json;
  const pm_status s = pm_verify(c.n, c.k, threads, cap, &v, format == "json" ? &json.p : nullptr);
  if (s != PM_OK) return report(s);
  Sink sink(output);
  if (format == "json") {
    sink.out() << json.p << '\n';
  } else {
    sink.out() << "n=" << c.n << " k=" << c.k << '\n'
               << "secrets_tested: " << v.secrets_tested << '\n'
               << "failures: " << v.failures << '\n'
               << "max_queries: " << v.max_queries << '\n'
               << "mean_queries: " << v.mean_queries << '\n'
               << "bound: " << v.bound << '\n'
               << "bound_violations: " << v.bound_violations << '\n'
               << "paper_bound: " << v.paper_bound << '\n'
               << "paper_bound_excess: " << v.paper_bound_excess << '\n'
               << "fallback_invocations: " << v.fallback_invocations << '\n';
  }
  if (v.failures) {
    std::cerr << "error: " << v.failures << " secret(s) not recovered\n";
    return kExitFailure;
  }
  if (v.bound_violations) {
    std::cerr << "error: " << v.bound_violations << " game(s) exceeded the query bound\n";
    return kExitBoundViolation;
  }
  return kExitOk;
}

int run_bench(Common c, std::uint64_t trials, std::uint64_t seed, unsigned threads, const std::string& format,
              bool header, const std::string& output) {
  settle(c);
  pm_bench_stats b{};
  pm_status s = pm_bench(c.n, c.k, trials, seed, threads, &b);
  if (s != PM_OK) return report(s);
  Sink sink(output);
  CString text;
  if (format == "json") {
    if ((s = pm_bench_json(&b, &text.p)) != PM_OK) return report(s);
  } else {
    if (header) sink.out() << pm_bench_csv_header() << '\n';
    if ((s = pm_bench_csv_row(&b, &text.p)) != PM_OK) return report(s);
  }
  sink.out() << text.p << '\n';
  if (b.violations) {
    std::cerr << "error: " << b.violations << " game(s) exceeded the query bound\n";
    return kExitBoundViolation;
  }
  return kExitOk;
}

int run_count(const std::string& path, std::uint64_t cap) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot read " << path << '\n';
    return kExitUsage;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  TranscriptHandle t;
  pm_status s = pm_transcript_from_json(buf.str().c_str(), &t.p);
  if (s != PM_OK) return report(s);
  std::uint64_t count = 0;
  if ((s = pm_count_consistent(t.p, cap, &count)) != PM_OK) return report(s);
  std::cout << count << '\n';
  return kExitOk;
}

int run_experiment(int n, int depth, bool fixed_second, const std::string& format, const std::string& output) {
  pm_reduction r{};
  CString json;
  const pm_status s = pm_reduction_factor(n, depth, fixed_second ? 1 : 0, &r, format == "json" ? &json.p : nullptr);
  if (s != PM_OK) return report(s);
  Sink sink(output);
  if (format == "json") {
    sink.out() << json.p << '\n';
  } else {
    sink.out() << "n=" << n << " depth=" << depth << " factor=" << r.factor_num << '/' << r.factor_den << " ("
               << r.factor << ")\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  CLI::App app{"Codebreaker for permutation Mastermind with black-peg feedback"};
  app.require_subcommand(1);

  Common shape;
  GameFlags game;
  std::string format;
  std::string output;

  auto* solve = app.add_subcommand("solve", "solve against a given or seeded random secret");
  add_shape(solve, shape);
  std::optional<std::string> secret;
  std::optional<std::uint64_t> seed;
  auto* secret_opt = solve->add_option("--secret", secret, "secret code, e.g. \"2 1 4 3\"");
  auto* seed_opt = solve->add_option("--seed", seed, "draw the secret from this seed");
  secret_opt->excludes(seed_opt);
  add_game_flags(solve, game);
  solve->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->default_str("json");
  solve->add_option("--output", output, "write the result to this file");

  auto* play = app.add_subcommand("play", "play against a codemaker answering on stdin");
  add_shape(play, shape);
  add_game_flags(play, game);
  std::string transcript_out;
  play->add_option("--transcript", transcript_out, "save the transcript JSON to this file");

  unsigned threads = 0;
  std::uint64_t cap = 0;
  auto* verify = app.add_subcommand("verify", "solve every secret and check the query bound");
  add_shape(verify, shape);
  verify->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
  verify->add_option("--cap", cap, "refuse more secrets than this (0: default)");
  verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->default_str("json");
  verify->add_option("--output", output, "write the report to this file");

  std::uint64_t trials = 1000;
  std::uint64_t bench_seed = 1;
  bool no_header = false;
  auto* bench = app.add_subcommand("bench", "query statistics over seeded random secrets");
  add_shape(bench, shape);
  bench->add_option("--trials", trials, "number of games")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "base seed");
  bench->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
  bench->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->default_str("csv");
  bench->add_flag("--no-header", no_header, "omit the CSV header line");
  bench->add_option("--output", output, "write the statistics to this file");

  std::string transcript_path;
  auto* count = app.add_subcommand("count", "count secrets consistent with a transcript");
  count->add_option("--transcript", transcript_path, "transcript JSON file")->required();
  count->add_option("--cap", cap, "refuse more secrets than this (0: default)");

  int depth = 1;
  bool fixed_second = false;
  auto* experiment = app.add_subcommand("experiment", "worst-case search-space reduction");
  experiment->add_option("--n", shape.n, "code length (k = n)")->required()->check(CLI::PositiveNumber);
  experiment->add_option("--depth", depth, "1 or 2")->check(CLI::Range(1, 2));
  experiment->add_flag("--fixed-second", fixed_second, "one second query for every first answer");
  experiment->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->default_str("json");
  experiment->add_option("--output", output, "write the result to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) {
      if (!secret && !seed) {
        std::cerr << "error: solve needs --secret or --seed\n";
        return kExitUsage;
      }
      return run_solve(shape, secret, seed, game, format.empty() ? "json" : format, output);
    }
    if (*play) return run_play(shape, game, transcript_out);
    if (*verify) return run_verify(shape, threads, cap, format.empty() ? "json" : format, output);
    if (*bench) return run_bench(shape, trials, bench_seed, threads, format.empty() ? "csv" : format, !no_header, output);
    if (*count) return run_count(transcript_path, cap);
    if (*experiment) return run_experiment(shape.n, depth, fixed_second, format.empty() ? "json" : format, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
