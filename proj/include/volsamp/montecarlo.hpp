#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "volsamp/linalg.hpp"
#include "volsamp/parallel.hpp"
#include "volsamp/regression.hpp"
#include "volsamp/rng.hpp"

namespace volsamp {

inline constexpr std::size_t kMinReplicates = 100;
inline constexpr double kDefaultSafetyFactor = 1.5;

struct McConfig {
  std::size_t replicates = 10000;
  RngSeed seed{};
  /// Two-sided normal-approximation confidence level for each entry.
  double confidence = 0.99;
  double safety_factor = kDefaultSafetyFactor;
  /// 0 = hardware concurrency. Results do not depend on this value.
  unsigned threads = 1;
};

/// Comparison of an estimated quantity against its predicted value.
///
/// For matrix quantities every entry gets its own interval; the scalar
/// fields describe the critical entry, the one with the largest
/// deviation-to-halfwidth ratio, so that passed is exactly
/// max_abs_deviation ≤ tolerance. Exact (enumeration) reports set
/// ci_halfwidth to 0 and tolerance to the fixed numerical tolerance.
struct VerificationReport {
  std::string quantity;
  std::string method;
  Matrix predicted;
  Matrix estimated;
  double max_abs_deviation = 0.0;
  double ci_halfwidth = 0.0;
  double tolerance = 0.0;
  /// Largest absolute entrywise deviation over all entries.
  double largest_deviation = 0.0;
  bool passed = false;
  std::size_t replicates = 0;
  RngSeed seed{};
  std::string note;
  std::vector<VerificationReport> subchecks;

  bool all_passed() const;
};

/// Per-entry sample mean and standard deviation over replicates.
struct McEstimate {
  Matrix mean;
  Matrix stddev;
  std::size_t replicates = 0;
};

/// Replicate j evaluates f(derive_seed(cfg.seed, j)). Partial moments are
/// kept per fixed block of replicates and merged in block order, so the
/// result is bit-identical for any thread count.
template <class Fn>
McEstimate mc_estimate(const McConfig& cfg, Index rows, Index cols, Fn&& f);

/// Builds a report from an estimate using normal-approximation intervals.
VerificationReport compare_to_prediction(std::string quantity, const Matrix& predicted,
                                         const McEstimate& est, const McConfig& cfg);

/// E[(X I_S)⁺] against X⁺.
VerificationReport mc_verify_pinv(const ProblemMatrix& x, Index s, const McConfig& cfg);

/// E[(X_S X_Sᵀ)⁻¹] against (n-d+1)/(s-d+1)·(XXᵀ)⁻¹, with the trace
/// against (n-d+1)/(s-d+1)·‖X⁺‖²_F as a subcheck.
VerificationReport mc_verify_gram_inverse(const ProblemMatrix& x, Index s,
                                          const McConfig& cfg);

/// E[L(w*_S)] at s = d against (d+1)·L(w*).
VerificationReport mc_verify_loss(const RegressionProblem& p, const McConfig& cfg);

/// Loss of the mean of k independent size-d solutions against (1+d/k)·L(w*).
VerificationReport mc_verify_repeated(const RegressionProblem& p, Index k,
                                      const McConfig& cfg);

namespace detail {

/// Welford accumulator over equally shaped matrices.
class MomentAccumulator {
 public:
  MomentAccumulator(Index rows, Index cols)
      : mean_(Matrix::Zero(rows, cols)), m2_(Matrix::Zero(rows, cols)) {}

  void add(const Matrix& x) {
    ++count_;
    const Matrix delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_.array() += delta.array() * (x - mean_).array();
  }

  /// Chan et al. pairwise merge.
  void merge(const MomentAccumulator& other);

  std::size_t count() const noexcept { return count_; }
  McEstimate finish() const;

 private:
  Matrix mean_;
  Matrix m2_;
  std::size_t count_ = 0;
};

void check_config(const McConfig& cfg);

}  // namespace detail

template <class Fn>
McEstimate mc_estimate(const McConfig& cfg, Index rows, Index cols, Fn&& f) {
  detail::check_config(cfg);
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (cfg.replicates + kBlock - 1) / kBlock;
  std::vector<detail::MomentAccumulator> partial(blocks,
                                                 detail::MomentAccumulator(rows, cols));
  for_each_block(cfg.replicates, kBlock, cfg.threads,
                 [&](std::size_t b, std::size_t begin, std::size_t end) {
                   for (std::size_t j = begin; j < end; ++j) {
                     partial[b].add(f(derive_seed(cfg.seed, j)));
                   }
                 });
  detail::MomentAccumulator total(rows, cols);
  for (const auto& acc : partial) total.merge(acc);
  return total.finish();
}

}  // namespace volsamp
