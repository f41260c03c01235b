#pragma once

#include <span>
#include <utility>

#include "volsamp/linalg.hpp"
#include "volsamp/subset.hpp"

namespace volsamp {

/// Design matrix X (d×n) with a label for every column.
class RegressionProblem {
 public:
  /// Throws DimensionMismatch unless labels.size() == x.n().
  RegressionProblem(ProblemMatrix x, Vector labels);

  const ProblemMatrix& x() const noexcept { return x_; }
  const Vector& labels() const noexcept { return labels_; }
  Index d() const noexcept { return x_.d(); }
  Index n() const noexcept { return x_.n(); }

  /// L(w) = ‖Xᵀw - y‖² over all n labels.
  double loss(const Eigen::Ref<const Vector>& w) const;

  /// ℓ_i(w) = (x_iᵀw - y_i)²
  double point_loss(const Eigen::Ref<const Vector>& w, Index i) const;

 private:
  ProblemMatrix x_;
  Vector labels_;
};

struct Solution {
  Vector w;
  /// Full-data loss L(w), never the subproblem loss.
  double loss = 0.0;
  /// Labels consumed to produce w.
  IndexSubset support;
};

/// w* = X⁺ᵀ y
Solution solve_full(const RegressionProblem& p);

/// w*_S = (X_S)⁺ᵀ y_S. Throws SingularMatrix when rank(X_S) < d.
Solution solve_subset(const RegressionProblem& p, const IndexSubset& s);

/// Mean of the subset solutions; support is the union of the samples.
Solution averaged_solution(const RegressionProblem& p,
                           std::span<const IndexSubset> samples);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = L(w*), rhs = L(w*₋ᵢ) - x_iᵀ(XXᵀ)⁻¹x_i · ℓ_i(w*₋ᵢ).
/// Throws SingularMatrix if dropping column i loses full rank.
IdentitySides leave_one_out_check(const RegressionProblem& p, Index i);

/// lhs = det(X̃X̃ᵀ) with X̃ = [X; yᵀ], rhs = det(XXᵀ)·L(w*).
IdentitySides augmented_det_identity(const RegressionProblem& p);

/// For |T| = d+1 and j ∈ T: lhs = det(X̃_T X̃_Tᵀ),
/// rhs = det(X_{T-j} X_{T-j}ᵀ) · ℓ_j(w*_{T-j}).
IdentitySides subset_det_identity(const RegressionProblem& p, const IndexSubset& t,
                                  Index j);

}  // namespace volsamp
