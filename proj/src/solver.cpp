#include "permind/solver.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "permind/error.hpp"

namespace permind {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Phase1: return "phase1";
    case Phase::AllOnes: return "all_ones";
    case Phase::FindFirst: return "find_first";
    case Phase::FindNext: return "find_next";
    case Phase::Fallback: return "fallback";
    case Phase::Endgame: return "endgame";
  }
  return "?";
}

Session::Session(Codemaker& oracle, SolveOptions options)
    : oracle_(oracle), config_(oracle.config()), options_(std::move(options)) {
  transcript_.config = config_;
}

int Session::ask(const Code& guess, Phase phase) {
  const int b = oracle_.answer(guess).black;
  if (b < 0 || b > config_.n) {
    throw Error(ErrorCode::InconsistentFeedback,
                "answer " + std::to_string(b) + " outside 0.." + std::to_string(config_.n));
  }
  if (options_.record_entries) {
    transcript_.append(guess, b);
  } else {
    ++transcript_.queries;
  }
  ++stats_.queries_by_phase[static_cast<std::size_t>(phase)];
  if (options_.trace) {
    *options_.trace << 'Q' << transcript_.queries << ' ' << to_string(guess) << " -> " << b << " ["
                    << to_string(phase) << "]\n";
  }
  if (b == config_.n) throw SecretFound(guess);
  return b;
}

int open_matches(int feedback_black, const Code& guess, const PartialSolution& x) {
  const int s = feedback_black - x.matches(guess);
  if (s < 0 || s > static_cast<int>(x.open_count())) {
    throw Error(ErrorCode::InconsistentFeedback,
                "open match count " + std::to_string(s) + " impossible with " +
                    std::to_string(x.open_count()) + " open positions");
  }
  return s;
}

namespace {

int ask_open(Session& session, const SolverState& state, const Code& guess, Phase phase) {
  return open_matches(session.ask(guess, phase), guess, state.x);
}

std::size_t ceil_mid(std::size_t a, std::size_t b) { return (a + b + 1) / 2; }

void notify(const Session& session, Phase phase, const ActivePair& pair, const SearchWindow& w) {
  if (session.options().hooks.on_window) session.options().hooks.on_window(phase, pair, w);
}

// Binary search shared by find_first and the fallback. The guess for pivot
// position l is code r with its first peg moved to l: positions < l then
// agree with code j, positions > l with code r.
std::size_t pivot_shift_search(Session& session, const SolverState& state, ActivePair pair,
                               Phase phase) {
  const ShiftFamily& fam = state.family;
  const GameConfig cfg = state.config();
  const std::size_t n = cfg.length();
  const std::size_t j = pair.j;
  const std::size_t r = pair.r;
  const Color pivot = fam.color(r, 0);

  SearchWindow w{0, n - 1, n - 1, SearchMode::Left};
  notify(session, phase, pair, w);
  std::vector<Color> g(n);
  while (w.b > w.a) {
    const std::size_t l = ceil_mid(w.a, w.b);
    for (std::size_t i = 0; i < n; ++i) g[i] = i < l ? fam.color(j, i) : fam.color(r, i);
    g[l] = pivot;
    int s = ask_open(session, state, Code::trusted(cfg, g), phase);
    if (s == 1) {
      // Either one open match before l, or the pivot itself is correct at l.
      // Moving the pivot one step right separates the two cases.
      if (l + 1 < n) {
        for (std::size_t i = 0; i < n; ++i) g[i] = i <= l ? fam.color(j, i) : fam.color(r, i);
        g[l + 1] = pivot;
      } else {
        // Relies on code j being wrong at position 0, i.e. a > 0.
        if (w.a == 0) {
          throw Error(ErrorCode::InternalInvariantViolation,
                      "last-position disambiguation reached without excluding position 1");
        }
        g[0] = pivot;
        for (std::size_t i = 1; i + 1 < n; ++i) g[i] = fam.color(j, i);
        g[n - 1] = fam.color(j, 0);
      }
      s = ask_open(session, state, Code::trusted(cfg, g), phase);
    }
    if (s > 0) {
      w.b = l - 1;
      w.m = std::min(w.m, w.b);
    } else {
      w.a = l;
    }
    notify(session, phase, pair, w);
  }
  return w.m;
}

}  // namespace

SolverState phase1(Session& session) {
  const GameConfig cfg = session.config();
  SolverState st{ShiftFamily(cfg), PartialSolution(cfg), std::vector<int>(cfg.colors(), 0)};
  int sum = 0;
  for (std::size_t j = 0; j + 1 < cfg.colors(); ++j) {
    st.ledger[j] = session.ask(st.family.code(j), Phase::Phase1);
    sum += st.ledger[j];
  }
  const int last = cfg.n - sum;
  if (last < 0 || last > cfg.n) {
    throw Error(ErrorCode::InconsistentFeedback,
                "phase 1 answers sum to " + std::to_string(sum) + " > n");
  }
  st.ledger.back() = last;
  return st;
}

std::optional<ActivePair> find_active_pair(const SolverState& state) {
  const std::size_t k = state.ledger.size();
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t r = (j + 1) % k;
    if (state.ledger[j] > 0 && state.ledger[r] == 0) return ActivePair{j, r};
  }
  return std::nullopt;
}

ActivePair active_pair(const SolverState& state) {
  if (auto pair = find_active_pair(state)) return *pair;
  throw Error(ErrorCode::NoActiveIndex, "no family index with open matches followed by none");
}

std::size_t find_first(Session& session, const SolverState& state, ActivePair pair) {
  return pivot_shift_search(session, state, pair, Phase::FindFirst);
}

std::size_t all_ones_search(Session& session, const SolverState& state) {
  const GameConfig cfg = state.config();
  const std::size_t n = cfg.length();
  const bool all_ones = std::all_of(state.ledger.begin(), state.ledger.end(), [](int v) { return v == 1; });
  if (cfg.n != cfg.k || state.x.fixed_count() != 0 || !all_ones || n < 3) {
    throw Error(ErrorCode::InternalInvariantViolation, "all-ones search preconditions not met");
  }

  // Identity with positions p and q exchanged. Since the identity has exactly
  // one fixed point with the secret, the answer is 0 iff that fixed point is
  // p or q (the swapped pegs cannot become correct, colors being distinct).
  const auto swapped = [&](std::size_t p, std::size_t q) {
    std::vector<Color> g(n);
    std::iota(g.begin(), g.end(), 1);
    std::swap(g[p], g[q]);
    return Code::trusted(cfg, std::move(g));
  };

  const std::size_t pairs = n / 2;
  // With n even the last pair is implied once all others answered nonzero.
  const std::size_t scanned = n % 2 == 0 ? pairs - 1 : pairs;
  std::optional<std::size_t> hit;
  for (std::size_t t = 0; t < scanned && !hit; ++t) {
    if (ask_open(session, state, swapped(2 * t, 2 * t + 1), Phase::AllOnes) == 0) hit = 2 * t;
  }
  if (!hit) {
    if (n % 2 == 1) return n - 1;
    hit = n - 2;
  }
  const std::size_t p = *hit;
  if (p + 2 < n) {
    return ask_open(session, state, swapped(p, p + 2), Phase::AllOnes) == 0 ? p : p + 1;
  }
  return ask_open(session, state, swapped(p - 1, p + 1), Phase::AllOnes) == 0 ? p + 1 : p;
}

std::optional<PivotContext> choose_pivot(const SolverState& state, ActivePair pair) {
  for (Color c : state.x.fixed_colors()) {
    const auto lj = state.family.position_of(pair.j, c);
    const auto lr = state.family.position_of(pair.r, c);
    if (lj && lr) return PivotContext{c, *lj, *lr};
  }
  return std::nullopt;
}

std::size_t find_next(Session& session, const SolverState& state, ActivePair pair,
                      const PivotContext& pivot) {
  const ShiftFamily& fam = state.family;
  const GameConfig cfg = state.config();
  const std::size_t n = cfg.length();
  const std::size_t j = pair.j;
  const std::size_t r = pair.r;
  const Color c = pivot.c;
  const std::size_t lj = pivot.lj;
  const std::size_t lr = pivot.lr;
  const std::int64_t before = session.transcript().queries;

  std::vector<Color> g(n);
  SearchMode mode = SearchMode::Left;
  if (lj + 1 < n) {
    // Pivot to the front: positions 1..lj then repeat code r (no open
    // matches), so only open matches of code j beyond lj can answer.
    g[0] = c;
    for (std::size_t i = 1; i < n; ++i) g[i] = i <= lj ? fam.color(j, i - 1) : fam.color(j, i);
    if (ask_open(session, state, Code::trusted(cfg, g), Phase::FindNext) != 0) mode = SearchMode::Right;
  }

  SearchWindow w = mode == SearchMode::Left ? SearchWindow{0, lj, n - 1, mode}
                                            : SearchWindow{lr, n - 1, n - 1, mode};
  notify(session, Phase::FindNext, pair, w);
  while (w.b > w.a) {
    const std::size_t l = ceil_mid(w.a, w.b);
    if (mode == SearchMode::Left) {
      for (std::size_t i = 0; i < n; ++i) {
        if (i < l || i > lj) g[i] = fam.color(j, i);
        else if (i == l) g[i] = c;
        else g[i] = fam.color(j, i - 1);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (i < lr || i > l) g[i] = fam.color(r, i);
        else if (i == l) g[i] = c;
        else g[i] = fam.color(r, i + 1);
      }
    }
    if (ask_open(session, state, Code::trusted(cfg, g), Phase::FindNext) > 0) {
      w.b = l - 1;
      w.m = std::min(w.m, w.b);
    } else {
      w.a = l;
    }
    notify(session, Phase::FindNext, pair, w);
  }
  auto& stats = session.stats();
  stats.max_find_next_queries = std::max(stats.max_find_next_queries, session.transcript().queries - before);
  return w.m;
}

std::size_t find_next_fallback(Session& session, const SolverState& state, ActivePair pair) {
  const std::int64_t before = session.transcript().queries;
  auto& stats = session.stats();
  ++stats.fallback_invocations;
  const std::size_t m = pivot_shift_search(session, state, pair, Phase::Fallback);
  stats.max_fallback_queries = std::max(stats.max_fallback_queries, session.transcript().queries - before);
  return m;
}

void apply_fix(SolverState& state, std::size_t pos, std::size_t j) {
  if (pos >= state.x.size() || !state.x.is_open(pos)) {
    throw Error(ErrorCode::InconsistentFeedback, "search settled on a position that is already fixed");
  }
  const Color c = state.family.color(j, pos);
  if (state.x.uses(c) || state.ledger[j] <= 0) {
    throw Error(ErrorCode::InconsistentFeedback, "search result contradicts earlier answers");
  }
  state.x.fix(pos, c);
  --state.ledger[j];
}

std::vector<Code> endgame_candidates(const SolverState& state) {
  const GameConfig cfg = state.config();
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < state.x.size(); ++i) {
    if (state.x.is_open(i)) open.push_back(i);
  }
  std::vector<std::size_t> live;  // family indices with ledger > 0, ascending
  for (std::size_t j = 0; j < state.ledger.size(); ++j) {
    if (state.ledger[j] > 0) live.push_back(j);
  }

  std::vector<Color> base(cfg.length());
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = state.x.at(i).value_or(0);

  // Each assignment maps open positions (in order) to family indices.
  std::vector<std::vector<std::size_t>> assignments;
  if (open.size() == 1 && live.size() == 1 && state.ledger[live[0]] == 1) {
    assignments.push_back({live[0]});
  } else if (open.size() == 2 && live.size() == 1 && state.ledger[live[0]] == 2) {
    assignments.push_back({live[0], live[0]});
  } else if (open.size() == 2 && live.size() == 2) {
    assignments.push_back({live[0], live[1]});
    assignments.push_back({live[1], live[0]});
  } else if (open.empty() && live.empty()) {
    assignments.push_back({});
  }

  std::vector<Code> out;
  for (const auto& a : assignments) {
    std::vector<Color> g = base;
    for (std::size_t t = 0; t < open.size(); ++t) g[open[t]] = state.family.color(a[t], open[t]);
    std::vector<bool> seen(cfg.colors() + 1, false);
    bool ok = true;
    for (Color c : g) {
      if (seen[static_cast<std::size_t>(c)]) ok = false;
      seen[static_cast<std::size_t>(c)] = true;
    }
    if (ok) out.push_back(Code::trusted(cfg, std::move(g)));
  }
  return out;
}

void endgame(Session& session, const SolverState& state) {
  if (state.x.open_count() > 2) {
    throw Error(ErrorCode::InternalInvariantViolation, "endgame entered with more than two open positions");
  }
  const auto& asked = session.transcript().entries;
  for (const Code& candidate : endgame_candidates(state)) {
    // Already answered below n: asking again cannot finish the game.
    const bool seen = std::any_of(asked.begin(), asked.end(),
                                  [&](const TranscriptEntry& e) { return e.guess == candidate; });
    if (!seen) session.ask(candidate, Phase::Endgame);
  }
  throw Error(ErrorCode::InconsistentFeedback, "no completion consistent with the answers");
}

SolveResult solve(Codemaker& oracle, const SolveOptions& options) {
  Session session(oracle, options);
  const auto& hooks = session.options().hooks;
  try {
    SolverState st = phase1(session);
    if (st.x.open_count() > 2) {
      std::size_t j = 0;
      std::size_t m = 0;
      if (auto pair = find_active_pair(st)) {
        j = pair->j;
        m = find_first(session, st, *pair);
      } else if (st.config().n == st.config().k) {
        session.stats().all_ones = true;
        m = all_ones_search(session, st);
      } else {
        throw Error(ErrorCode::InconsistentFeedback, "phase 1 ledger has no active index");
      }
      apply_fix(st, m, j);
      if (hooks.on_fix) hooks.on_fix(st, m, j);
    }
    while (st.x.open_count() > 2) {
      const auto pair = find_active_pair(st);
      if (!pair) throw Error(ErrorCode::InconsistentFeedback, "ledger has no active index");
      const auto pivot = choose_pivot(st, *pair);
      const std::size_t m =
          pivot ? find_next(session, st, *pair, *pivot) : find_next_fallback(session, st, *pair);
      apply_fix(st, m, pair->j);
      if (hooks.on_fix) hooks.on_fix(st, m, pair->j);
    }
    endgame(session, st);
  } catch (const SecretFound& found) {
    session.transcript().solved = true;
    session.transcript().secret = found.code();
  }
  return {std::move(session.transcript()), session.stats()};
}

}  // namespace permind
