#pragma once

// Value types for repetition-free codes: configuration, codes, partial
// solutions, the cyclic shift family and black/white scoring.
//
// Colors are 1-based integers 1..k as in every external format. Positions and
// family indices are 0-based in the C++ API; family index j here is the code
// that is conventionally written sigma^{j+1}.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permind {

using Color = int;

struct GameConfig {
  int n = 0;  // code length
  int k = 0;  // number of colors

  // Throws InvalidConfig unless 1 <= n <= k.
  static GameConfig make(int n, int k);

  std::size_t length() const { return static_cast<std::size_t>(n); }
  std::size_t colors() const { return static_cast<std::size_t>(k); }

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

class Code {
 public:
  Code() = default;

  // Skips validation. Only for callers that construct codes which are
  // repetition-free by construction.
  static Code trusted(GameConfig config, std::vector<Color> entries) {
    Code c;
    c.config_ = config;
    c.entries_ = std::move(entries);
    return c;
  }

  GameConfig config() const { return config_; }
  std::size_t size() const { return entries_.size(); }
  Color operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Color> entries() const { return entries_; }

  friend bool operator==(const Code& a, const Code& b) { return a.entries_ == b.entries_; }

 private:
  GameConfig config_;
  std::vector<Color> entries_;
};

// Returns a Code iff the length is n, every entry lies in 1..k and no entry
// repeats. Errors name the offending 1-based position.
Code validate_code(std::span<const Color> raw, GameConfig config);

int black(const Code& x, const Code& y);
// Shared colors at wrong positions. For repetition-free codes any shared
// color can be matched, so this is |colors(x) & colors(y)| - black(x, y).
int white(const Code& x, const Code& y);

// "4 1 2 3"
std::string to_string(const Code& code);
Code parse_code(std::string_view text, GameConfig config);

// Per-position knowledge of the secret. Open positions have no value.
class PartialSolution {
 public:
  PartialSolution() = default;
  explicit PartialSolution(GameConfig config);

  GameConfig config() const { return config_; }
  std::size_t size() const { return entries_.size(); }
  bool is_open(std::size_t pos) const { return !entries_[pos].has_value(); }
  std::optional<Color> at(std::size_t pos) const { return entries_[pos]; }
  bool uses(Color c) const { return used_[static_cast<std::size_t>(c)]; }
  std::size_t open_count() const { return open_; }
  std::size_t fixed_count() const { return entries_.size() - open_; }

  // Throws AlreadyFixed / ColorAlreadyUsed.
  void fix(std::size_t pos, Color color);

  // Number of fixed positions where the guess holds the fixed color.
  int matches(const Code& guess) const;

  // Fixed colors in ascending order.
  std::vector<Color> fixed_colors() const;

  friend bool operator==(const PartialSolution& a, const PartialSolution& b) {
    return a.entries_ == b.entries_;
  }

 private:
  GameConfig config_;
  std::vector<std::optional<Color>> entries_;
  std::vector<bool> used_;
  std::size_t open_ = 0;
};

// Value-returning form of PartialSolution::fix.
PartialSolution fix(PartialSolution x, std::size_t pos, Color color);

// OPEN serializes as 0: "2 0 0".
std::string to_string(const PartialSolution& x);

// The k right-circular shifts of the identity on 1..k, truncated to the first
// n positions. Entries are computed on demand; nothing of size k*n is stored.
class ShiftFamily {
 public:
  ShiftFamily() = default;
  explicit ShiftFamily(GameConfig config) : config_(config) {}

  GameConfig config() const { return config_; }
  std::size_t size() const { return config_.colors(); }

  Color color(std::size_t j, std::size_t i) const {
    const std::size_t k = config_.colors();
    return static_cast<Color>((i % k + k - j % k) % k) + 1;
  }

  // Position of color c in code j, or nullopt when the truncation drops it.
  std::optional<std::size_t> position_of(std::size_t j, Color c) const {
    const std::size_t k = config_.colors();
    const std::size_t pos = (static_cast<std::size_t>(c) - 1 + j) % k;
    if (pos >= config_.length()) return std::nullopt;
    return pos;
  }

  std::size_t successor(std::size_t j) const { return (j + 1) % size(); }

  Code code(std::size_t j) const;
  std::vector<Code> codes() const;

 private:
  GameConfig config_;
};

ShiftFamily shift_family(GameConfig config);

}  // namespace permind
