#pragma once

#include <vector>

#include "volsamp/linalg.hpp"
#include "volsamp/rng.hpp"
#include "volsamp/subset.hpp"

namespace volsamp {

inline constexpr double kDefaultSubsetCap = 1e6;

/// Removal weights below zero but above this are rounding noise.
inline constexpr double kWeightClampTolerance = 1e-9;
/// Total clamped weight at or below this signals a conditioning failure.
inline constexpr double kBreakdownTotal = 1e-10;

/// Live state of one reverse-elimination run.
struct SamplerState {
  /// Surviving column indices, increasing.
  std::vector<Index> survivors;
  /// weights[i] = 1 - x_iᵀ Z x_i for surviving i; indexed by column.
  Vector weights;
  /// (X_S X_Sᵀ)⁻¹ for the current survivors S.
  Matrix inverse_gram;
};

/// Size-s volume sampling by removing one column at a time.
///
/// Starts from S = {0..n-1} with Z = (XXᵀ)⁻¹ and p_i = 1 - x_iᵀ Z x_i, then
/// while |S| > s draws i ∝ p_i from S, sets v = Z x_i / sqrt(p_i), and
/// updates p_j -= (x_jᵀ v)² and Z += v vᵀ. Runs in O((n-s+d)·n·d) time with
/// O(d² + n) working memory; all of it is allocated in the constructor.
///
/// The sampler keeps a reference to `x`, which must outlive it.
class ReverseIterativeSampler {
 public:
  /// Throws RangeError unless d ≤ target_size ≤ n.
  ReverseIterativeSampler(const ProblemMatrix& x, Index target_size, RngSeed seed);

  bool done() const noexcept {
    return static_cast<Index>(state_.survivors.size()) <= target_;
  }

  /// Removes one column and returns its index. Throws NumericBreakdown if the
  /// weights collapse even after recomputing them from scratch.
  Index step();

  /// Steps until |S| = target_size.
  IndexSubset run();

  IndexSubset current() const;
  const SamplerState& state() const noexcept { return state_; }
  /// Number of from-scratch recomputations triggered by the breakdown guard.
  int refreshes() const noexcept { return refreshes_; }

 private:
  void refresh();

  const ProblemMatrix& x_;
  Index target_;
  Rng rng_;
  SamplerState state_;
  Vector scratch_;
  int refreshes_ = 0;
};

IndexSubset reverse_iterative_sample(const ProblemMatrix& x, Index s, RngSeed seed);

/// P(S₋ᵢ | S) = (1 - x_iᵀ(X_S X_Sᵀ)⁻¹x_i) / (|S| - d) for each i in S, in the
/// order of S. Requires |S| > d; throws SingularMatrix if rank(X_S) < d.
Vector removal_weights(const ProblemMatrix& x, const IndexSubset& s);

struct WeightedSubset {
  IndexSubset subset;
  double probability = 0.0;
  /// log det(X_S X_Sᵀ), -inf for subsets with zero volume.
  double log_det = 0.0;
};

/// Every size-s subset with P(S) = det(X_S X_Sᵀ) / (C(n-d, s-d) det(XXᵀ)),
/// in lexicographic order. Zero-volume subsets are listed with probability 0.
/// Throws TooManySubsets if C(n, s) exceeds `cap`.
std::vector<WeightedSubset> enumerate_volume_distribution(
    const ProblemMatrix& x, Index s, double cap = kDefaultSubsetCap,
    unsigned threads = 1);

/// Exact draw from the enumerated table by inverse CDF.
IndexSubset naive_sample(const ProblemMatrix& x, Index s, RngSeed seed,
                         double cap = kDefaultSubsetCap);

/// True iff every size-s subset has positive volume.
bool has_full_support(const ProblemMatrix& x, Index s, double cap = kDefaultSubsetCap);

/// Throws RangeError unless d ≤ s ≤ n.
void check_sample_size(const ProblemMatrix& x, Index s);

/// Throws TooManySubsets if C(n, s) > cap.
void check_subset_cap(Index n, Index s, double cap);

}  // namespace volsamp
