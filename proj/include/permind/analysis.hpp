#pragma once

// Ground truth around the solver: secret enumeration, consistency counting,
// query bounds, exhaustive verification, random benchmarks and the
// search-space reduction experiments.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "permind/codes.hpp"
#include "permind/oracle.hpp"

namespace permind {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// k! / (k-n)!, saturating at UINT64_MAX.
std::uint64_t secret_count(GameConfig config);

// Calls fn for every repetition-free code in lexicographic order. Throws
// CapExceeded before doing any work when secret_count exceeds cap.
void for_each_secret(GameConfig config, const std::function<void(const Code&)>& fn,
                     std::uint64_t cap = kDefaultEnumerationCap);
std::vector<Code> enumerate_secrets(GameConfig config, std::uint64_t cap = kDefaultEnumerationCap);

// Secrets y with black(g, y) = b for every transcript entry (g, b).
std::uint64_t count_consistent(const Transcript& transcript, std::uint64_t cap = kDefaultEnumerationCap);
std::uint64_t count_consistent(GameConfig config, std::span<const TranscriptEntry> entries,
                               std::uint64_t cap = kDefaultEnumerationCap);

std::uint64_t factorial(int n);
std::uint64_t subfactorial(int n);
// Permutations of n with exactly b fixed points, b = 0..n: C(n,b) * !(n-b).
// Exact for n <= 20.
std::vector<std::uint64_t> fixed_point_distribution(int n);

int ceil_log2(int n);

struct Bounds {
  std::int64_t paper = 0;  // the published worst-case query count
  std::int64_t impl = 0;   // envelope this implementation guarantees
};
Bounds bounds(GameConfig config);

// Seeded partial Fisher-Yates over 1..k, truncated to n. The bounded draw is
// done here rather than through <random> distributions so the sequence only
// depends on the seed.
Code random_secret(GameConfig config, std::mt19937_64& rng);

struct VerificationFailure {
  Code secret;
  std::string reason;
};

struct VerificationReport {
  GameConfig config;
  std::uint64_t secrets_tested = 0;
  std::vector<VerificationFailure> failures;
  std::int64_t max_queries = 0;
  double mean_queries = 0.0;
  std::int64_t bound = 0;        // impl bound
  std::int64_t paper_bound = 0;
  std::uint64_t bound_violations = 0;
  std::uint64_t paper_bound_excess = 0;  // secrets that needed more than paper_bound
  std::int64_t max_paper_excess = 0;
  std::uint64_t fallback_invocations = 0;
  std::int64_t max_fallback_queries = 0;
};

struct VerifyOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Solves every secret against a guarded static codemaker.
VerificationReport verify_exhaustive(GameConfig config, const VerifyOptions& options = {});
std::string to_json(const VerificationReport& report);

struct BenchStats {
  GameConfig config;
  std::uint64_t trials = 0;
  std::int64_t min = 0;
  double mean = 0.0;
  std::int64_t max = 0;
  std::int64_t paper_bound = 0;
  std::int64_t impl_bound = 0;
  std::uint64_t violations = 0;  // games above impl_bound or unsolved
  std::uint64_t fallbacks = 0;
  std::uint64_t paper_bound_excess = 0;
  double max_seconds = 0.0;      // slowest single game
};

struct BenchOptions {
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

BenchStats bench(GameConfig config, const BenchOptions& options);
std::string bench_csv_header();  // n,k,trials,min,mean,max,paper_bound,impl_bound,violations,fallbacks
std::string to_csv_row(const BenchStats& stats);
std::string to_json(const BenchStats& stats);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t num, std::uint64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class ReductionMode {
  Adaptive,     // second query chosen after seeing the first answer
  FixedSecond,  // one second query for every first answer
};

struct ReductionOptions {
  ReductionMode mode = ReductionMode::Adaptive;
  // Try all n! second queries instead of one per cycle type.
  bool all_second_guesses = false;
  std::uint64_t cap = kDefaultEnumerationCap;
};

struct ReductionResult {
  int n = 0;
  int depth = 1;
  ReductionMode mode = ReductionMode::Adaptive;
  Rational worst_factor;        // n! / size of the surviving candidate set
  std::uint64_t worst_class = 0;
  std::vector<int> witness;     // adversary answers b1 (, b2)
  std::optional<Code> second_guess;
};

// The first query is the identity (k = n). Depth 1: the adversary picks the
// largest answer class. Depth 2: the codebreaker picks the second query to
// minimise the largest class, the adversary picks the answers.
ReductionResult reduction_factor(int n, int depth, const ReductionOptions& options = {});
std::string to_json(const ReductionResult& result);

}  // namespace permind
