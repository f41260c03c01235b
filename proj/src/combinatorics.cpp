#include "volsamp/combinatorics.hpp"

#include <numeric>

#include "volsamp/numeric.hpp"

namespace volsamp {

std::vector<IndexSubset> all_subsets(Index n, Index k) {
  std::vector<IndexSubset> out;
  if (k < 0 || k > n) return out;
  out.reserve(static_cast<std::size_t>(binomial(n, k)));
  std::vector<Index> current(static_cast<std::size_t>(k));
  std::iota(current.begin(), current.end(), Index{0});
  for (;;) {
    out.emplace_back(current, n);
    Index pos = k - 1;
    while (pos >= 0 && current[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++current[pos];
    for (Index j = pos + 1; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

std::uint64_t lexicographic_rank(const IndexSubset& s) {
  const Index n = s.ambient();
  const Index k = s.size();
  std::uint64_t rank = 0;
  Index prev = -1;
  for (Index pos = 0; pos < k; ++pos) {
    for (Index v = prev + 1; v < s[pos]; ++v) {
      rank += static_cast<std::uint64_t>(binomial(n - v - 1, k - pos - 1));
    }
    prev = s[pos];
  }
  return rank;
}

}  // namespace volsamp
