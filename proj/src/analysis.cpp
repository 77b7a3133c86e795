#include "permind/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "parallel.hpp"
#include "permind/error.hpp"
#include "permind/solver.hpp"

namespace permind {

using ojson = nlohmann::ordered_json;

std::uint64_t secret_count(GameConfig config) {
  std::uint64_t total = 1;
  for (int i = 0; i < config.n; ++i) {
    const auto f = static_cast<std::uint64_t>(config.k - i);
    if (total > std::numeric_limits<std::uint64_t>::max() / f) return std::numeric_limits<std::uint64_t>::max();
    total *= f;
  }
  return total;
}

namespace {

void require_within_cap(GameConfig config, std::uint64_t cap) {
  const std::uint64_t count = secret_count(config);
  if (count > cap) {
    throw Error(ErrorCode::CapExceeded, "n=" + std::to_string(config.n) + " k=" + std::to_string(config.k) +
                                            " has " + std::to_string(count) + " secrets, cap is " +
                                            std::to_string(cap));
  }
}

}  // namespace

void for_each_secret(GameConfig config, const std::function<void(const Code&)>& fn, std::uint64_t cap) {
  require_within_cap(config, cap);
  const std::size_t n = config.length();
  const std::size_t k = config.colors();
  std::vector<Color> cur(n, 0);
  std::vector<bool> used(k + 1, false);
  // Iterative depth-first search; cur[d] == 0 means "not yet placed".
  std::size_t d = 0;
  while (true) {
    Color c = cur[d];
    if (c) used[static_cast<std::size_t>(c)] = false;
    ++c;
    while (c <= config.k && used[static_cast<std::size_t>(c)]) ++c;
    if (c > config.k) {
      cur[d] = 0;
      if (d == 0) return;
      --d;
      continue;
    }
    cur[d] = c;
    used[static_cast<std::size_t>(c)] = true;
    if (d + 1 == n) {
      fn(Code::trusted(config, cur));
    } else {
      ++d;
    }
  }
}

std::vector<Code> enumerate_secrets(GameConfig config, std::uint64_t cap) {
  std::vector<Code> out;
  for_each_secret(config, [&](const Code& c) { out.push_back(c); }, cap);
  return out;
}

std::uint64_t count_consistent(GameConfig config, std::span<const TranscriptEntry> entries, std::uint64_t cap) {
  std::uint64_t count = 0;
  for_each_secret(
      config,
      [&](const Code& y) {
        for (const auto& e : entries) {
          if (black(e.guess, y) != e.black) return;
        }
        ++count;
      },
      cap);
  return count;
}

std::uint64_t count_consistent(const Transcript& transcript, std::uint64_t cap) {
  return count_consistent(transcript.config, transcript.entries, cap);
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t subfactorial(int n) {
  // !n = (n-1)(!(n-1) + !(n-2)), !0 = 1, !1 = 0
  std::uint64_t prev2 = 1, prev1 = 0;
  if (n == 0) return 1;
  for (int i = 2; i <= n; ++i) {
    const std::uint64_t cur = static_cast<std::uint64_t>(i - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return prev1;
}

std::vector<std::uint64_t> fixed_point_distribution(int n) {
  if (n < 0 || n > 20) throw Error(ErrorCode::CapExceeded, "exact counts need n <= 20");
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n) + 1);
  std::uint64_t binom = 1;  // C(n, b)
  for (int b = 0; b <= n; ++b) {
    out[static_cast<std::size_t>(b)] = binom * subfactorial(n - b);
    binom = binom * static_cast<std::uint64_t>(n - b) / static_cast<std::uint64_t>(b + 1);
  }
  return out;
}

int ceil_log2(int n) {
  int l = 0;
  while ((std::int64_t{1} << l) < n) ++l;
  return l;
}

Bounds bounds(GameConfig config) {
  const std::int64_t n = config.n;
  const std::int64_t k = config.k;
  const std::int64_t L = ceil_log2(config.n);
  Bounds b;
  if (n == k) {
    b.paper = (n - 3) * L + (5 * n) / 2 - 1;
    b.impl = n <= 3 ? 2 * n : (n - 1) + std::max(n / 2 + 1, 2 * L) + (n - 3) * (1 + L) + 2;
  } else {
    b.paper = (n - 1) * L + k + n - 2;
    // Each pivot-less search costs up to 2L instead of 1 + L.
    b.impl = n == 1 ? k : b.paper + std::max<std::int64_t>(0, n - 3) * std::max<std::int64_t>(0, L - 1);
  }
  return b;
}

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace

Code random_secret(GameConfig config, std::mt19937_64& rng) {
  std::vector<Color> colors(config.colors());
  for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = static_cast<Color>(i + 1);
  for (std::size_t i = 0; i < config.length(); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(bounded(rng, colors.size() - i));
    std::swap(colors[i], colors[j]);
  }
  colors.resize(config.length());
  return Code::trusted(config, std::move(colors));
}

VerificationReport verify_exhaustive(GameConfig config, const VerifyOptions& options) {
  const std::vector<Code> secrets = enumerate_secrets(config, options.cap);
  const Bounds bnd = bounds(config);

  struct Outcome {
    std::int64_t queries = 0;
    std::int64_t fallbacks = 0;
    std::int64_t max_fallback = 0;
    std::string failure;
  };
  std::vector<Outcome> outcomes(secrets.size());
  detail::parallel_for(secrets.size(), options.threads, [&](std::uint64_t i) {
    const Code& y = secrets[i];
    StaticCodemaker maker(y);
    GuardedCodemaker guarded(maker);
    Outcome& out = outcomes[i];
    try {
      SolveOptions so;
      so.record_entries = false;
      const SolveResult res = solve(guarded, so);
      out.queries = res.transcript.queries;
      out.fallbacks = res.stats.fallback_invocations;
      out.max_fallback = res.stats.max_fallback_queries;
      if (!res.transcript.solved || !res.transcript.secret || !(*res.transcript.secret == y)) {
        out.failure = "not solved";
      }
    } catch (const Error& e) {
      out.queries = guarded.budget().used;
      out.failure = e.what();
    }
  });

  VerificationReport rep;
  rep.config = config;
  rep.secrets_tested = secrets.size();
  rep.bound = bnd.impl;
  rep.paper_bound = bnd.paper;
  double total = 0;
  for (std::size_t i = 0; i < secrets.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.failure.empty()) rep.failures.push_back({secrets[i], o.failure});
    rep.max_queries = std::max(rep.max_queries, o.queries);
    total += static_cast<double>(o.queries);
    if (o.queries > bnd.impl) ++rep.bound_violations;
    if (o.queries > bnd.paper) {
      ++rep.paper_bound_excess;
      rep.max_paper_excess = std::max(rep.max_paper_excess, o.queries - bnd.paper);
    }
    rep.fallback_invocations += static_cast<std::uint64_t>(o.fallbacks);
    rep.max_fallback_queries = std::max(rep.max_fallback_queries, o.max_fallback);
  }
  rep.mean_queries = secrets.empty() ? 0.0 : total / static_cast<double>(secrets.size());
  return rep;
}

namespace {

ojson code_json(const Code& c) {
  ojson a = ojson::array();
  for (Color x : c.entries()) a.push_back(x);
  return a;
}

}  // namespace

std::string to_json(const VerificationReport& r) {
  ojson failures = ojson::array();
  for (const auto& f : r.failures) failures.push_back(ojson{{"secret", code_json(f.secret)}, {"reason", f.reason}});
  ojson doc;
  doc["n"] = r.config.n;
  doc["k"] = r.config.k;
  doc["secrets_tested"] = r.secrets_tested;
  doc["failures"] = std::move(failures);
  doc["max_queries"] = r.max_queries;
  doc["mean_queries"] = r.mean_queries;
  doc["bound"] = r.bound;
  doc["paper_bound"] = r.paper_bound;
  doc["bound_violations"] = r.bound_violations;
  doc["paper_bound_excess"] = r.paper_bound_excess;
  doc["max_paper_excess"] = r.max_paper_excess;
  doc["fallback_invocations"] = r.fallback_invocations;
  doc["max_fallback_queries"] = r.max_fallback_queries;
  return doc.dump();
}

BenchStats bench(GameConfig config, const BenchOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Code> secrets;
  secrets.reserve(options.trials);
  for (std::uint64_t t = 0; t < options.trials; ++t) secrets.push_back(random_secret(config, rng));

  const Bounds bnd = bounds(config);
  struct Outcome {
    std::int64_t queries = 0;
    std::int64_t fallbacks = 0;
    bool ok = false;
    double seconds = 0;
  };
  std::vector<Outcome> outcomes(secrets.size());
  detail::parallel_for(secrets.size(), options.threads, [&](std::uint64_t i) {
    StaticCodemaker maker(secrets[i]);
    SolveOptions so;
    so.record_entries = false;
    const auto start = std::chrono::steady_clock::now();
    const SolveResult res = solve(maker, so);
    Outcome& o = outcomes[i];
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.queries = res.transcript.queries;
    o.fallbacks = res.stats.fallback_invocations;
    o.ok = res.transcript.solved && res.transcript.secret && *res.transcript.secret == secrets[i];
  });

  BenchStats s;
  s.config = config;
  s.trials = options.trials;
  s.paper_bound = bnd.paper;
  s.impl_bound = bnd.impl;
  s.min = outcomes.empty() ? 0 : std::numeric_limits<std::int64_t>::max();
  double total = 0;
  for (const auto& o : outcomes) {
    s.min = std::min(s.min, o.queries);
    s.max = std::max(s.max, o.queries);
    total += static_cast<double>(o.queries);
    if (!o.ok || o.queries > bnd.impl) ++s.violations;
    if (o.queries > bnd.paper) ++s.paper_bound_excess;
    s.fallbacks += static_cast<std::uint64_t>(o.fallbacks);
    s.max_seconds = std::max(s.max_seconds, o.seconds);
  }
  s.mean = outcomes.empty() ? 0.0 : total / static_cast<double>(outcomes.size());
  return s;
}

std::string bench_csv_header() { return "n,k,trials,min,mean,max,paper_bound,impl_bound,violations,fallbacks"; }

std::string to_csv_row(const BenchStats& s) {
  char mean[64];
  std::snprintf(mean, sizeof mean, "%.3f", s.mean);
  return std::to_string(s.config.n) + ',' + std::to_string(s.config.k) + ',' + std::to_string(s.trials) + ',' +
         std::to_string(s.min) + ',' + mean + ',' + std::to_string(s.max) + ',' + std::to_string(s.paper_bound) +
         ',' + std::to_string(s.impl_bound) + ',' + std::to_string(s.violations) + ',' +
         std::to_string(s.fallbacks);
}

std::string to_json(const BenchStats& s) {
  ojson doc;
  doc["n"] = s.config.n;
  doc["k"] = s.config.k;
  doc["trials"] = s.trials;
  doc["min"] = s.min;
  doc["mean"] = s.mean;
  doc["max"] = s.max;
  doc["paper_bound"] = s.paper_bound;
  doc["impl_bound"] = s.impl_bound;
  doc["violations"] = s.violations;
  doc["fallbacks"] = s.fallbacks;
  doc["paper_bound_excess"] = s.paper_bound_excess;
  doc["max_seconds"] = s.max_seconds;
  return doc.dump();
}

}  // namespace permind
