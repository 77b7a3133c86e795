#pragma once

// Test-only reference implementations. Deliberately naive and independent of
// the library code paths they check.

#include <algorithm>
#include <numeric>
#include <vector>

#include "permind/codes.hpp"

namespace permind::testing {

inline int ref_black(const std::vector<int>& x, const std::vector<int>& y) {
  int c = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] == y[i]) ++c;
  return c;
}

inline std::vector<int> vec(const Code& c) { return {c.entries().begin(), c.entries().end()}; }

inline Code code(std::vector<int> v, int k) {
  return validate_code(v, GameConfig::make(static_cast<int>(v.size()), k));
}
inline Code code(std::vector<int> v) {
  const int k = static_cast<int>(v.size());
  return code(std::move(v), k);
}

// Family built by literally rotating the identity on 1..k to the right and
// truncating to n entries.
inline std::vector<std::vector<int>> rotated_family(int n, int k) {
  std::vector<int> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 1);
  std::vector<std::vector<int>> out;
  for (int j = 0; j < k; ++j) {
    out.emplace_back(cur.begin(), cur.begin() + n);
    std::rotate(cur.rbegin(), cur.rbegin() + 1, cur.rend());
  }
  return out;
}

// All injections 1..n -> 1..k via std::next_permutation over k colors.
inline std::vector<std::vector<int>> all_secrets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> sel(static_cast<std::size_t>(k), 0);
  std::fill(sel.begin(), sel.begin() + n, 1);
  // Choose subsets, then permute each.
  std::vector<int> colors(static_cast<std::size_t>(k));
  std::iota(colors.begin(), colors.end(), 1);
  do {
    std::vector<int> pick;
    for (int i = 0; i < k; ++i)
      if (sel[static_cast<std::size_t>(i)]) pick.push_back(colors[static_cast<std::size_t>(i)]);
    do out.push_back(pick);
    while (std::next_permutation(pick.begin(), pick.end()));
  } while (std::prev_permutation(sel.begin(), sel.end()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace permind::testing
