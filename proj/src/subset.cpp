#include "volsamp/subset.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "volsamp/errors.hpp"

namespace volsamp {

IndexSubset::IndexSubset(std::vector<Index> indices, Index n)
    : indices_(std::move(indices)), n_(n) {
  if (n < 0) throw Error(ErrorCode::RangeError, "negative ambient size");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] < 0 || indices_[k] >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(indices_[k]) + " outside [0, " +
                      std::to_string(n) + ")");
    }
    if (k > 0 && indices_[k] == indices_[k - 1]) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "duplicate index " + std::to_string(indices_[k]));
    }
  }
}

IndexSubset IndexSubset::full(Index n) {
  std::vector<Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  return IndexSubset(std::move(all), n);
}

IndexSubset IndexSubset::without(Index i) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it == indices_.end() || *it != i) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(i) + " is not a member");
  }
  IndexSubset out;
  out.n_ = n_;
  out.indices_.reserve(indices_.size() - 1);
  out.indices_.insert(out.indices_.end(), indices_.begin(), it);
  out.indices_.insert(out.indices_.end(), it + 1, indices_.end());
  return out;
}

bool IndexSubset::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<Index> IndexSubset::one_based() const {
  std::vector<Index> out(indices_);
  for (auto& v : out) ++v;
  return out;
}

}  // namespace volsamp
