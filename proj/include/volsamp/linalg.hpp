#pragma once

#include <optional>

#include <Eigen/Dense>

#include "volsamp/subset.hpp"

namespace volsamp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative pivot threshold: a Cholesky pivot of a k×k matrix A is accepted
/// only when it exceeds kPivotTolerance · trace(A) / k.
inline constexpr double kPivotTolerance = 1e-12;
inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kDenominatorTolerance = 1e-12;

/// Lower-triangular L with A = L Lᵀ, or nullopt if a pivot falls below the
/// relative threshold. Only the lower triangle of `a` is read.
std::optional<Matrix> cholesky_factor(const Eigen::Ref<const Matrix>& a);

/// det(A Aᵀ) for an arbitrary k×m matrix A, exactly 0 when the Cholesky
/// factorization of A Aᵀ detects rank deficiency.
double gram_det_of(const Eigen::Ref<const Matrix>& a);

/// Symmetric positive-definite matrix with its Cholesky factor.
class SpdMatrix {
 public:
  /// Throws SingularMatrix when asymmetric or when a pivot is too small.
  explicit SpdMatrix(Matrix entries);

  const Matrix& entries() const noexcept { return entries_; }
  const Matrix& factor() const noexcept { return factor_; }
  Index size() const noexcept { return entries_.rows(); }

  double determinant() const;
  double log_determinant() const;
  /// A⁻¹ B
  Matrix solve(const Eigen::Ref<const Matrix>& rhs) const;

 private:
  Matrix entries_;
  Matrix factor_;
};

/// Wide full-row-rank design matrix X (d×n, n ≥ d ≥ 1) with cached XXᵀ and
/// (XXᵀ)⁻¹.
class ProblemMatrix {
 public:
  /// Throws RangeError on bad shape and RankDeficient when rank(X) < d.
  explicit ProblemMatrix(Matrix entries);

  Index d() const noexcept { return entries_.rows(); }
  Index n() const noexcept { return entries_.cols(); }
  const Matrix& entries() const noexcept { return entries_; }
  auto column(Index i) const { return entries_.col(i); }

  const SpdMatrix& gram() const noexcept { return gram_; }
  const SpdMatrix& gram_inverse() const noexcept { return gram_inverse_; }

  /// X_S, the d×|S| submatrix of the selected columns.
  Matrix columns(const IndexSubset& s) const;

 private:
  Matrix entries_;
  SpdMatrix gram_;
  SpdMatrix gram_inverse_;
};

/// X_S X_Sᵀ. Throws SingularMatrix if that product is not positive definite.
SpdMatrix gram(const ProblemMatrix& x, const IndexSubset& s);

SpdMatrix spd_inverse(const SpdMatrix& a);

/// (X I_S)⁺: n×d, rows in S hold X_Sᵀ(X_S X_Sᵀ)⁻¹, all other rows are zero.
Matrix pseudo_inverse(const ProblemMatrix& x, const IndexSubset& s);

/// X⁺ = Xᵀ(XXᵀ)⁻¹
Matrix pseudo_inverse(const ProblemMatrix& x);

/// det(X_S X_Sᵀ) ≥ 0, exactly 0 on detected rank deficiency.
double gram_det(const ProblemMatrix& x, const IndexSubset& s);

/// log det(X_S X_Sᵀ), -inf on detected rank deficiency.
double gram_log_det(const ProblemMatrix& x, const IndexSubset& s);

enum class RankOneSign { Add = 1, Remove = -1 };

/// Given A⁻¹, returns (A ± u uᵀ)⁻¹ via Sherman-Morrison.
/// Throws DenominatorVanishes when |1 ± uᵀA⁻¹u| ≤ 1e-12.
SpdMatrix sherman_morrison_update(const SpdMatrix& a_inverse,
                                  const Eigen::Ref<const Vector>& u,
                                  RankOneSign sign);

}  // namespace volsamp
