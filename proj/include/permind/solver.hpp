#pragma once

// Codebreaker for black-peg Mastermind without color repetition.
//
// Phase 1 guesses the first k-1 codes of the shift family; the last count
// follows because every color sits at every position exactly once across the
// family. Afterwards secret positions are identified one at a time by binary
// searches that move a single "pivot" peg through codes built from an active
// family index j (open matches left) and its cyclic successor r (none left).
// At most two open positions are settled by direct candidate guesses.
//
// Any guess answered with black = n ends the game immediately.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "permind/codes.hpp"
#include "permind/oracle.hpp"

namespace permind {

enum class Phase { Phase1, AllOnes, FindFirst, FindNext, Fallback, Endgame };
inline constexpr std::size_t kPhaseCount = 6;
std::string_view to_string(Phase phase);

struct SolverState {
  ShiftFamily family;
  PartialSolution x;
  // ledger[j]: open positions i where family code j agrees with the secret.
  // Sums to x.open_count().
  std::vector<int> ledger;

  GameConfig config() const { return family.config(); }
};

struct ActivePair {
  std::size_t j = 0;  // ledger[j] > 0
  std::size_t r = 0;  // successor of j, ledger[r] == 0
};

struct PivotContext {
  Color c = 0;
  std::size_t lj = 0;  // position of c in code j
  std::size_t lr = 0;  // position of c in code r
};

enum class SearchMode { Left, Right };

struct SearchWindow {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t m = 0;
  SearchMode mode = SearchMode::Left;
};

struct SolverStats {
  std::array<std::int64_t, kPhaseCount> queries_by_phase{};
  std::int64_t fallback_invocations = 0;
  std::int64_t max_fallback_queries = 0;   // largest single find_next_fallback call
  std::int64_t max_find_next_queries = 0;  // largest single find_next call
  bool all_ones = false;

  std::int64_t queries(Phase p) const { return queries_by_phase[static_cast<std::size_t>(p)]; }
};

// Instrumentation for tests. Never consulted by the strategy itself.
struct SolverHooks {
  std::function<void(const SolverState&, std::size_t pos, std::size_t j)> on_fix;
  std::function<void(Phase, const ActivePair&, const SearchWindow&)> on_window;
};

struct SolveOptions {
  // When false the returned transcript only carries the query count, which
  // keeps memory flat for very long games.
  bool record_entries = true;
  // Receives "Q<seq> <guess> -> <black> [phase]" lines.
  std::ostream* trace = nullptr;
  SolverHooks hooks;
};

// Raised by Session::ask on black = n; solve() turns it into a solved transcript.
class SecretFound {
 public:
  explicit SecretFound(Code code) : code_(std::move(code)) {}
  const Code& code() const { return code_; }

 private:
  Code code_;
};

// Query channel of one game. Records the transcript and per-phase counts.
class Session {
 public:
  explicit Session(Codemaker& oracle, SolveOptions options = {});

  int ask(const Code& guess, Phase phase);

  GameConfig config() const { return config_; }
  const SolveOptions& options() const { return options_; }
  const Transcript& transcript() const { return transcript_; }
  Transcript& transcript() { return transcript_; }
  SolverStats& stats() { return stats_; }
  const SolverStats& stats() const { return stats_; }

 private:
  Codemaker& oracle_;
  GameConfig config_;
  SolveOptions options_;
  Transcript transcript_;
  SolverStats stats_;
};

// black(guess, y) - black(guess, x): matches the guess makes on open positions.
// Throws InconsistentFeedback when negative or larger than the open count.
int open_matches(int feedback_black, const Code& guess, const PartialSolution& x);

SolverState phase1(Session& session);

// Smallest j (scanning 0, 1, ...) with ledger[j] > 0 and ledger[j+1 mod k] == 0.
std::optional<ActivePair> find_active_pair(const SolverState& state);
// Same, but throws NoActiveIndex when none exists.
ActivePair active_pair(const SolverState& state);

// Leftmost open position where code j agrees with the secret, using the
// first color of code r as pivot peg. Requires ledger[j] > 0, ledger[r] == 0.
std::size_t find_first(Session& session, const SolverState& state, ActivePair pair);

// k = n with every ledger entry equal to 1 and nothing fixed: finds the single
// fixed point of the secret with adjacent transpositions of the identity.
std::size_t all_ones_search(Session& session, const SolverState& state);

// Smallest fixed color present in both codes of the pair.
std::optional<PivotContext> choose_pivot(const SolverState& state, ActivePair pair);

// Position m (open, code j correct there) using a fixed color as pivot.
std::size_t find_next(Session& session, const SolverState& state, ActivePair pair,
                      const PivotContext& pivot);

// find_first's search on open counts, for k > n when no pivot color exists.
std::size_t find_next_fallback(Session& session, const SolverState& state, ActivePair pair);

// Fixes x[pos] to the color of code j there and decrements ledger[j].
void apply_fix(SolverState& state, std::size_t pos, std::size_t j);

// Requires at most two open positions. Only returns by throwing: SecretFound
// on success, InconsistentFeedback when no ledger-consistent completion wins.
[[noreturn]] void endgame(Session& session, const SolverState& state);

// Candidate completions of x that consume the ledger exactly, in the order
// endgame() guesses them.
std::vector<Code> endgame_candidates(const SolverState& state);

struct SolveResult {
  Transcript transcript;
  SolverStats stats;
};

SolveResult solve(Codemaker& oracle, const SolveOptions& options = {});

}  // namespace permind
