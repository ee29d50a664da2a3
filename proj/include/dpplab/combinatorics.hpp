#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dpplab/error.hpp"

namespace dpplab {

/// C(n, k) in 64-bit arithmetic; throws SizeError on overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw SizeError("binomial: result overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

/// Calls f(subset) for each k-subset of {0..n-1} in lexicographic order;
/// the subset is a sorted std::vector<int>.
template <typename F>
void for_each_combination(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    f(static_cast<const std::vector<int>&>(c));
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

/// All k-subsets of {0..n-1}, lexicographic.
inline std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  for_each_combination(n, k, [&](const std::vector<int>& c) { out.push_back(c); });
  return out;
}

}  // namespace dpplab
