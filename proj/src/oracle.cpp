#include "permind/oracle.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "permind/error.hpp"

namespace permind {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<int> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

Feedback InteractiveCodemaker::answer(const Code& guess) {
  ++seq_;
  const std::string prompt = "GUESS " + std::to_string(seq_) + ": " + to_string(guess) + "\n";
  for (int malformed = 0;;) {
    out_ << prompt << std::flush;
    std::string line;
    if (!std::getline(in_, line)) {
      throw Error(ErrorCode::StreamClosed, "input closed while waiting for answer " + std::to_string(seq_));
    }
    const auto value = parse_int(line);
    if (!value) {
      if (++malformed == kMaxMalformed) {
        throw Error(ErrorCode::MalformedAnswer, "expected an integer 0.." + std::to_string(config_.n) +
                                                    ", got '" + line + "'");
      }
      continue;
    }
    if (*value < 0 || *value > config_.n) {
      throw Error(ErrorCode::AnswerOutOfRange,
                  std::to_string(*value) + " not in 0.." + std::to_string(config_.n));
    }
    return {*value};
  }
}

GuardedCodemaker::GuardedCodemaker(Codemaker& inner, QueryBudget budget, bool memoize)
    : inner_(inner), budget_(budget), memoize_(memoize) {
  transcript_.config = inner_.config();
}

Feedback GuardedCodemaker::answer(const Code& guess) {
  const GameConfig cfg = inner_.config();
  validate_code(guess.entries(), cfg);
  std::vector<Color> key;
  if (memoize_) {
    key.assign(guess.entries().begin(), guess.entries().end());
    if (auto it = memo_.find(key); it != memo_.end()) return {it->second};
  }
  if (budget_.limit && budget_.used >= *budget_.limit) {
    throw Error(ErrorCode::BudgetExceeded,
                "query budget of " + std::to_string(*budget_.limit) + " exhausted");
  }
  const Feedback fb = inner_.answer(guess);
  if (fb.black < 0 || fb.black > cfg.n) {
    throw Error(ErrorCode::AnswerOutOfRange,
                std::to_string(fb.black) + " not in 0.." + std::to_string(cfg.n));
  }
  ++budget_.used;
  transcript_.append(guess, fb.black);
  if (memoize_) memo_.emplace(std::move(key), fb.black);
  return fb;
}

}  // namespace permind
