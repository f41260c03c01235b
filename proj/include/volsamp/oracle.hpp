#pragma once

#include <string_view>

#include "volsamp/linalg.hpp"
#include "volsamp/regression.hpp"
#include "volsamp/sampler.hpp"

namespace volsamp {

enum class Quantity {
  PseudoInverse,
  GramInverse,
  Covariance,
  Frobenius,
  Loss,
  WeightVector,
};

std::string_view to_string(Quantity q) noexcept;

/// Exact expectation under size-s volume sampling, computed by enumerating
/// every subset. Scalars are stored as 1×1, vectors as d×1.
struct ExactExpectation {
  Quantity quantity = Quantity::PseudoInverse;
  Matrix value;
  /// True iff every enumerated subset had positive volume.
  bool support_complete = true;

  double scalar() const { return value(0, 0); }
};

struct OracleOptions {
  double cap = kDefaultSubsetCap;
  /// Limit on C(n, d)^k for the k-fold repeated-sampling oracle.
  double tuple_cap = 1e5;
  unsigned threads = 1;
};

/// Σ_S P(S)·(X I_S)⁺
ExactExpectation exact_pinv_expectation(const ProblemMatrix& x, Index s,
                                        const OracleOptions& opts = {});

/// Σ_S P(S)·(X_S X_Sᵀ)⁻¹
ExactExpectation exact_gram_inverse_expectation(const ProblemMatrix& x, Index s,
                                                const OracleOptions& opts = {});

/// Σ_S P(S)·(X I_S)⁺ᵀ(X I_S)⁺ - X⁺ᵀX⁺
ExactExpectation exact_covariance(const ProblemMatrix& x, Index s,
                                  const OracleOptions& opts = {});

/// Σ_S P(S)·‖(X I_S)⁺‖²_F
ExactExpectation exact_frobenius_expectation(const ProblemMatrix& x, Index s,
                                             const OracleOptions& opts = {});

/// Σ_{|S|=d} P(S)·L(w*_S)
ExactExpectation exact_loss_expectation(const RegressionProblem& p,
                                        const OracleOptions& opts = {});

/// Σ_S P(S)·w*_S
ExactExpectation exact_weight_expectation(const RegressionProblem& p, Index s,
                                          const OracleOptions& opts = {});

/// Σ_{|S|=d} P(S)·‖Xᵀ(w*_S - w*)‖², the total variance of the predictions.
double exact_prediction_variance(const RegressionProblem& p,
                                 const OracleOptions& opts = {});

/// Expected full loss of the mean of k independent size-d subset solutions,
/// by enumerating all k-tuples of subsets. Throws TooManySubsets when
/// C(n, d)^k exceeds opts.tuple_cap.
double exact_repeated_sampling_loss(const RegressionProblem& p, Index k,
                                    const OracleOptions& opts = {});

/// Sum of all enumerated probabilities at level s.
double distribution_mass(const ProblemMatrix& x, Index s, const OracleOptions& opts = {});

/// Total variation between the level-s table and the level-(s+1) table pushed
/// through removal_weights. Requires d ≤ s < n.
double layer_total_variation(const ProblemMatrix& x, Index s,
                             const OracleOptions& opts = {});

inline constexpr double kLayerTolerance = 1e-9;

bool layer_consistency_check(const ProblemMatrix& x, Index s,
                             const OracleOptions& opts = {});

struct CauchyBinetSums {
  /// Σ_{|S|=s} det(X_S X_Sᵀ)
  double subset_sum = 0.0;
  /// C(n-d, s-d)·det(XXᵀ)
  double predicted = 0.0;
};

CauchyBinetSums cauchy_binet(const ProblemMatrix& x, Index s,
                             const OracleOptions& opts = {});

}  // namespace volsamp
