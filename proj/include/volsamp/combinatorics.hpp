#pragma once

#include <cstdint>
#include <vector>

#include "volsamp/subset.hpp"

namespace volsamp {

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<IndexSubset> all_subsets(Index n, Index k);

/// Position of `s` in the lexicographic order produced by all_subsets.
std::uint64_t lexicographic_rank(const IndexSubset& s);

}  // namespace volsamp
