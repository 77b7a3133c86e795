#include "permind/codes.hpp"

#include <charconv>
#include <sstream>

#include "permind/error.hpp"

namespace permind {

GameConfig GameConfig::make(int n, int k) {
  if (n < 1 || k < n) {
    throw Error(ErrorCode::InvalidConfig,
                "need 1 <= n <= k, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  return GameConfig{n, k};
}

Code validate_code(std::span<const Color> raw, GameConfig config) {
  if (raw.size() != config.length()) {
    const std::size_t pos = std::min(raw.size(), config.length()) + 1;
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(config.n) +
                                               " colors, got " + std::to_string(raw.size()) +
                                               " (position " + std::to_string(pos) + ")");
  }
  std::vector<bool> seen(config.colors() + 1, false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Color c = raw[i];
    if (c < 1 || c > config.k) {
      throw Error(ErrorCode::ColorOutOfRange, "color " + std::to_string(c) + " at position " +
                                                  std::to_string(i + 1) + " not in 1.." +
                                                  std::to_string(config.k));
    }
    if (seen[static_cast<std::size_t>(c)]) {
      throw Error(ErrorCode::RepeatedColor,
                  "color " + std::to_string(c) + " repeated at position " + std::to_string(i + 1));
    }
    seen[static_cast<std::size_t>(c)] = true;
  }
  return Code::trusted(config, std::vector<Color>(raw.begin(), raw.end()));
}

namespace {

void require_same_config(const Code& x, const Code& y) {
  if (!(x.config() == y.config()) || x.size() != y.size()) {
    throw Error(ErrorCode::ConfigMismatch, "codes belong to different configurations");
  }
}

}  // namespace

int black(const Code& x, const Code& y) {
  require_same_config(x, y);
  int count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) count += x[i] == y[i];
  return count;
}

int white(const Code& x, const Code& y) {
  require_same_config(x, y);
  std::vector<bool> in_x(x.config().colors() + 1, false);
  for (Color c : x.entries()) in_x[static_cast<std::size_t>(c)] = true;
  int shared = 0;
  for (Color c : y.entries()) shared += in_x[static_cast<std::size_t>(c)];
  return shared - black(x, y);
}

std::string to_string(const Code& code) {
  std::string out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(code[i]);
  }
  return out;
}

Code parse_code(std::string_view text, GameConfig config) {
  std::vector<Color> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != ',') ++j;
    Color value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
    if (ec != std::errc() || ptr != text.data() + j) {
      throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(text.substr(i, j - i)) + "'");
    }
    raw.push_back(value);
    i = j;
  }
  return validate_code(raw, config);
}

PartialSolution::PartialSolution(GameConfig config)
    : config_(config),
      entries_(config.length()),
      used_(config.colors() + 1, false),
      open_(config.length()) {}

void PartialSolution::fix(std::size_t pos, Color color) {
  if (pos >= entries_.size()) {
    throw Error(ErrorCode::LengthMismatch, "position " + std::to_string(pos + 1) + " out of range");
  }
  if (entries_[pos]) {
    throw Error(ErrorCode::AlreadyFixed, "position " + std::to_string(pos + 1) + " already fixed");
  }
  if (color < 1 || color > config_.k) {
    throw Error(ErrorCode::ColorOutOfRange, "color " + std::to_string(color));
  }
  if (used_[static_cast<std::size_t>(color)]) {
    throw Error(ErrorCode::ColorAlreadyUsed, "color " + std::to_string(color) + " already fixed");
  }
  entries_[pos] = color;
  used_[static_cast<std::size_t>(color)] = true;
  --open_;
}

int PartialSolution::matches(const Code& guess) const {
  int count = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] && *entries_[i] == guess[i]) ++count;
  }
  return count;
}

std::vector<Color> PartialSolution::fixed_colors() const {
  std::vector<Color> out;
  for (std::size_t c = 1; c < used_.size(); ++c) {
    if (used_[c]) out.push_back(static_cast<Color>(c));
  }
  return out;
}

PartialSolution fix(PartialSolution x, std::size_t pos, Color color) {
  x.fix(pos, color);
  return x;
}

std::string to_string(const PartialSolution& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(x.at(i).value_or(0));
  }
  return out;
}

Code ShiftFamily::code(std::size_t j) const {
  std::vector<Color> entries(config_.length());
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = color(j, i);
  return Code::trusted(config_, std::move(entries));
}

std::vector<Code> ShiftFamily::codes() const {
  std::vector<Code> out;
  out.reserve(size());
  for (std::size_t j = 0; j < size(); ++j) out.push_back(code(j));
  return out;
}

ShiftFamily shift_family(GameConfig config) { return ShiftFamily(config); }

}  // namespace permind
