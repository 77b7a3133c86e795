#include "permind/play.hpp"

#include <ostream>

#include "permind/analysis.hpp"

namespace permind {

std::optional<std::size_t> first_contradiction(const Transcript& transcript, std::uint64_t cap) {
  const std::span<const TranscriptEntry> all(transcript.entries);
  for (std::size_t p = 1; p <= all.size(); ++p) {
    if (count_consistent(transcript.config, all.first(p), cap) == 0) return p;
  }
  return std::nullopt;
}

PlayOutcome play(std::istream& in, std::ostream& out, GameConfig config, const PlayOptions& options) {
  InteractiveCodemaker human(in, out, config);
  GuardedCodemaker guarded(human, options.budget, options.memoize);
  PlayOutcome outcome;
  try {
    SolveOptions so;
    so.trace = options.trace;
    const SolveResult res = solve(guarded, so);
    outcome.transcript = guarded.transcript();
    outcome.transcript.solved = res.transcript.solved;
    outcome.transcript.secret = res.transcript.secret;
    out << "SECRET: " << to_string(*res.transcript.secret) << '\n' << std::flush;
  } catch (const Error& e) {
    outcome.transcript = guarded.transcript();
    outcome.error = e.code();
    outcome.message = e.what();
    if (e.code() == ErrorCode::InconsistentFeedback && secret_count(config) <= options.explain_cap) {
      if (auto p = first_contradiction(outcome.transcript, options.explain_cap)) {
        outcome.message += "; no secret satisfies answers 1.." + std::to_string(*p);
      }
    }
    out << "ERROR: " << outcome.message << '\n' << std::flush;
  }
  return outcome;
}

}  // namespace permind
