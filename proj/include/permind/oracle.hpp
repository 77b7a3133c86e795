#pragma once

// Codemakers: objects that hold (or stand in for) a secret and answer
// black-peg queries about it.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "permind/codes.hpp"

namespace permind {

struct Feedback {
  int black = 0;
};

// One instance serves one game session; answer() is never called
// concurrently on the same object.
class Codemaker {
 public:
  virtual ~Codemaker() = default;
  virtual Feedback answer(const Code& guess) = 0;
  virtual GameConfig config() const = 0;
};

class StaticCodemaker final : public Codemaker {
 public:
  explicit StaticCodemaker(Code secret) : secret_(std::move(secret)) {}

  Feedback answer(const Code& guess) override { return {black(guess, secret_)}; }
  GameConfig config() const override { return secret_.config(); }
  const Code& secret() const { return secret_; }

 private:
  Code secret_;
};

// A human plays the codemaker over a line-oriented stream pair:
//   -> "GUESS <seq>: c1 ... cn"
//   <- "<black>"
// Malformed replies are re-prompted; the third malformed reply in a row
// raises MalformedAnswer.
class InteractiveCodemaker final : public Codemaker {
 public:
  static constexpr int kMaxMalformed = 3;

  InteractiveCodemaker(std::istream& in, std::ostream& out, GameConfig config)
      : in_(in), out_(out), config_(config) {}

  Feedback answer(const Code& guess) override;
  GameConfig config() const override { return config_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  GameConfig config_;
  std::int64_t seq_ = 0;
};

struct TranscriptEntry {
  std::int64_t seq = 0;  // 1-based
  Code guess;
  int black = 0;
};

struct Transcript {
  GameConfig config;
  std::vector<TranscriptEntry> entries;
  bool solved = false;
  std::optional<Code> secret;
  std::int64_t queries = 0;

  void append(const Code& guess, int black) {
    ++queries;
    entries.push_back({queries, guess, black});
  }
};

// {"version":1,"n":N,"k":K,"entries":[{"seq":1,"guess":[...],"black":B},...],
//  "solved":true|false,"secret":[...]|null,"queries":Q}
std::string transcript_to_json(const Transcript& t);
// Validates every guess and the invariants (queries == entries, solved
// transcripts end on the secret with black = n). Throws ParseError.
Transcript transcript_from_json(std::string_view text);

struct QueryBudget {
  std::optional<std::int64_t> limit;  // nullopt: unlimited
  std::int64_t used = 0;
};

// Validates guesses, enforces a budget and records what the inner codemaker
// actually answered. With memoize on, a repeated guess is answered from the
// record and consumes nothing.
class GuardedCodemaker final : public Codemaker {
 public:
  GuardedCodemaker(Codemaker& inner, QueryBudget budget = {}, bool memoize = false);

  Feedback answer(const Code& guess) override;
  GameConfig config() const override { return inner_.config(); }

  const QueryBudget& budget() const { return budget_; }
  const Transcript& transcript() const { return transcript_; }
  Transcript& transcript() { return transcript_; }

 private:
  Codemaker& inner_;
  QueryBudget budget_;
  bool memoize_;
  Transcript transcript_;
  std::map<std::vector<Color>, int> memo_;
};

}  // namespace permind
