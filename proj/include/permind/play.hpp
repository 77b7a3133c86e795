#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "permind/error.hpp"
#include "permind/oracle.hpp"
#include "permind/solver.hpp"

namespace permind {

struct PlayOptions {
  QueryBudget budget;
  bool memoize = false;
  std::ostream* trace = nullptr;
  // Contradiction reports count consistent secrets only below this size.
  std::uint64_t explain_cap = 1'000'000;
};

struct PlayOutcome {
  Transcript transcript;  // what the human was asked and answered
  std::optional<ErrorCode> error;
  std::string message;
};

// Runs the solver against a human codemaker on (in, out). Ends the exchange
// with "SECRET: c1 ... cn" or "ERROR: <reason>".
PlayOutcome play(std::istream& in, std::ostream& out, GameConfig config, const PlayOptions& options = {});

// Length of the shortest transcript prefix no secret satisfies, or nullopt
// when every prefix is satisfiable.
std::optional<std::size_t> first_contradiction(const Transcript& transcript, std::uint64_t cap);

}  // namespace permind
