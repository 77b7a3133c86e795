#include <algorithm>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "permind/analysis.hpp"
#include "permind/error.hpp"

namespace permind {

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorCode::InternalInvariantViolation, "zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

namespace {

// Partitions of n in non-increasing order.
void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

// One permutation per cycle type. Relabelling positions and colors by the same
// bijection fixes the identity and preserves every black count, so second
// queries in one conjugacy class are interchangeable.
std::vector<Code> cycle_type_representatives(GameConfig cfg) {
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions(cfg.n, cfg.n, cur, parts);
  std::vector<Code> out;
  for (const auto& part : parts) {
    std::vector<Color> g(cfg.length());
    std::size_t start = 0;
    for (int len : part) {
      const auto l = static_cast<std::size_t>(len);
      for (std::size_t i = 0; i < l; ++i) g[start + i] = static_cast<Color>(start + (i + 1) % l + 1);
      start += l;
    }
    out.push_back(Code::trusted(cfg, std::move(g)));
  }
  return out;
}

}  // namespace

ReductionResult reduction_factor(int n, int depth, const ReductionOptions& options) {
  if (depth != 1 && depth != 2) throw Error(ErrorCode::InvalidConfig, "depth must be 1 or 2");
  if (n > 20) throw Error(ErrorCode::CapExceeded, "exact reduction factors need n <= 20");
  const GameConfig cfg = GameConfig::make(n, n);
  const std::vector<Code> secrets = enumerate_secrets(cfg, options.cap);
  const Code first = ShiftFamily(cfg).code(0);
  const std::uint64_t total = secrets.size();
  const std::size_t answers = cfg.length() + 1;

  std::vector<int> b1(secrets.size());
  for (std::size_t s = 0; s < secrets.size(); ++s) b1[s] = black(first, secrets[s]);

  ReductionResult res;
  res.n = n;
  res.depth = depth;
  res.mode = options.mode;

  if (depth == 1) {
    std::vector<std::uint64_t> count(answers, 0);
    for (int b : b1) ++count[static_cast<std::size_t>(b)];
    const auto it = std::max_element(count.begin(), count.end());
    res.worst_class = *it;
    res.witness = {static_cast<int>(it - count.begin())};
    res.worst_factor = Rational::make(total, res.worst_class);
    return res;
  }

  const std::vector<Code> seconds =
      options.all_second_guesses ? secrets : cycle_type_representatives(cfg);

  // classes[g][b1 * answers + b2]
  std::vector<std::vector<std::uint64_t>> classes(seconds.size(),
                                                  std::vector<std::uint64_t>(answers * answers, 0));
  for (std::size_t g = 0; g < seconds.size(); ++g) {
    for (std::size_t s = 0; s < secrets.size(); ++s) {
      const auto b2 = static_cast<std::size_t>(black(seconds[g], secrets[s]));
      ++classes[g][static_cast<std::size_t>(b1[s]) * answers + b2];
    }
  }

  const auto largest_for = [&](std::size_t g, std::size_t a1) {
    std::uint64_t best = 0;
    std::size_t arg = 0;
    for (std::size_t a2 = 0; a2 < answers; ++a2) {
      if (classes[g][a1 * answers + a2] > best) {
        best = classes[g][a1 * answers + a2];
        arg = a2;
      }
    }
    return std::pair{best, arg};
  };

  std::uint64_t worst = 0;
  std::size_t wit_g = 0, wit_b1 = 0, wit_b2 = 0;
  if (options.mode == ReductionMode::Adaptive) {
    worst = 0;
    for (std::size_t a1 = 0; a1 < answers; ++a1) {
      std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
      std::size_t best_g = 0, best_b2 = 0;
      for (std::size_t g = 0; g < seconds.size(); ++g) {
        const auto [size, a2] = largest_for(g, a1);
        if (size < best) {
          best = size;
          best_g = g;
          best_b2 = a2;
        }
      }
      if (best > worst) {
        worst = best;
        wit_g = best_g;
        wit_b1 = a1;
        wit_b2 = best_b2;
      }
    }
  } else {
    worst = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t g = 0; g < seconds.size(); ++g) {
      std::uint64_t big = 0;
      std::size_t arg1 = 0, arg2 = 0;
      for (std::size_t a1 = 0; a1 < answers; ++a1) {
        const auto [size, a2] = largest_for(g, a1);
        if (size > big) {
          big = size;
          arg1 = a1;
          arg2 = a2;
        }
      }
      if (big < worst) {
        worst = big;
        wit_g = g;
        wit_b1 = arg1;
        wit_b2 = arg2;
      }
    }
  }
  res.worst_class = worst;
  res.worst_factor = Rational::make(total, worst);
  res.witness = {static_cast<int>(wit_b1), static_cast<int>(wit_b2)};
  res.second_guess = seconds[wit_g];
  return res;
}

std::string to_json(const ReductionResult& r) {
  nlohmann::ordered_json doc;
  doc["n"] = r.n;
  doc["depth"] = r.depth;
  doc["mode"] = r.mode == ReductionMode::Adaptive ? "adaptive" : "fixed_second";
  doc["worst_factor"] = {{"num", r.worst_factor.num}, {"den", r.worst_factor.den}};
  doc["worst_factor_float"] = r.worst_factor.value();
  doc["worst_class"] = r.worst_class;
  doc["witness"] = r.witness;
  if (r.second_guess) {
    doc["second_guess"] = std::vector<Color>(r.second_guess->entries().begin(), r.second_guess->entries().end());
  } else {
    doc["second_guess"] = nullptr;
  }
  return doc.dump();
}

}  // namespace permind
