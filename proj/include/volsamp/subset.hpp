#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace volsamp {

using Index = std::ptrdiff_t;

/// A set of column indices S inside {0..n-1}, kept strictly increasing.
///
/// Indices are 0-based; human-facing output adds one.
class IndexSubset {
 public:
  IndexSubset() = default;

  /// Sorts and validates `indices`; duplicates or entries outside [0, n)
  /// raise IndexOutOfRange.
  IndexSubset(std::vector<Index> indices, Index n);
  IndexSubset(std::initializer_list<Index> indices, Index n)
      : IndexSubset(std::vector<Index>(indices), n) {}

  /// {0..n-1}
  static IndexSubset full(Index n);

  /// The same set with one member removed; throws if `i` is not a member.
  IndexSubset without(Index i) const;

  bool contains(Index i) const;
  Index size() const noexcept { return static_cast<Index>(indices_.size()); }
  Index ambient() const noexcept { return n_; }
  std::span<const Index> indices() const noexcept { return indices_; }
  Index operator[](Index k) const { return indices_[static_cast<std::size_t>(k)]; }

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  /// 1-based copy for reports.
  std::vector<Index> one_based() const;

  friend bool operator==(const IndexSubset&, const IndexSubset&) = default;

 private:
  std::vector<Index> indices_;
  Index n_ = 0;
};

}  // namespace volsamp
