#include "volsamp/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "volsamp/errors.hpp"

namespace volsamp {

std::optional<Matrix> cholesky_factor(const Eigen::Ref<const Matrix>& a) {
  const Index k = a.rows();
  if (k == 0 || a.cols() != k) return std::nullopt;
  const double trace = a.diagonal().sum();
  const double threshold = kPivotTolerance * trace / static_cast<double>(k);
  if (!(trace > 0.0)) return std::nullopt;

  Matrix l = Matrix::Zero(k, k);
  for (Index j = 0; j < k; ++j) {
    double pivot = a(j, j);
    for (Index p = 0; p < j; ++p) pivot -= l(j, p) * l(j, p);
    if (!(pivot > threshold)) return std::nullopt;
    const double root = std::sqrt(pivot);
    l(j, j) = root;
    for (Index i = j + 1; i < k; ++i) {
      double v = a(i, j);
      for (Index p = 0; p < j; ++p) v -= l(i, p) * l(j, p);
      l(i, j) = v / root;
    }
  }
  return l;
}

double gram_det_of(const Eigen::Ref<const Matrix>& a) {
  const Matrix g = a * a.transpose();
  const auto l = cholesky_factor(g);
  if (!l) return 0.0;
  const double p = l->diagonal().prod();
  return p * p;
}

SpdMatrix::SpdMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw Error(ErrorCode::SingularMatrix, "SPD matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw Error(ErrorCode::SingularMatrix, "matrix is not symmetric");
  }
  auto l = cholesky_factor(entries_);
  if (!l) throw Error(ErrorCode::SingularMatrix, "Cholesky pivot below tolerance");
  factor_ = std::move(*l);
}

double SpdMatrix::determinant() const {
  const double p = factor_.diagonal().prod();
  return p * p;
}

double SpdMatrix::log_determinant() const {
  return 2.0 * factor_.diagonal().array().log().sum();
}

Matrix SpdMatrix::solve(const Eigen::Ref<const Matrix>& rhs) const {
  const auto lower = factor_.triangularView<Eigen::Lower>();
  Matrix y = lower.solve(rhs);
  return lower.transpose().solve(y);
}

namespace {

SpdMatrix checked_gram(const Matrix& x) {
  return SpdMatrix(x * x.transpose());
}

Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace

ProblemMatrix::ProblemMatrix(Matrix entries)
    : entries_(std::move(entries)),
      gram_([this] {
        if (entries_.rows() < 1 || entries_.cols() < entries_.rows()) {
          throw Error(ErrorCode::RangeError,
                      "design matrix must satisfy n >= d >= 1, got d=" +
                          std::to_string(entries_.rows()) +
                          " n=" + std::to_string(entries_.cols()));
        }
        if (!entries_.allFinite()) {
          throw Error(ErrorCode::RangeError, "design matrix has non-finite entries");
        }
        try {
          return checked_gram(entries_);
        } catch (const Error&) {
          throw Error(ErrorCode::RankDeficient, "design matrix is not full row rank");
        }
      }()),
      gram_inverse_(spd_inverse(gram_)) {}

Matrix ProblemMatrix::columns(const IndexSubset& s) const {
  if (s.ambient() != n()) {
    throw Error(ErrorCode::IndexOutOfRange, "subset ambient size does not match n");
  }
  Matrix out(d(), s.size());
  for (Index k = 0; k < s.size(); ++k) out.col(k) = entries_.col(s[k]);
  return out;
}

SpdMatrix gram(const ProblemMatrix& x, const IndexSubset& s) {
  return checked_gram(x.columns(s));
}

SpdMatrix spd_inverse(const SpdMatrix& a) {
  return SpdMatrix(symmetrized(a.solve(Matrix::Identity(a.size(), a.size()))));
}

Matrix pseudo_inverse(const ProblemMatrix& x, const IndexSubset& s) {
  const Matrix xs = x.columns(s);
  const SpdMatrix g = checked_gram(xs);
  // rows of (X_S)⁺ = X_Sᵀ (X_S X_Sᵀ)⁻¹, computed as ((X_S X_Sᵀ)⁻¹ X_S)ᵀ
  const Matrix block = g.solve(xs).transpose();
  Matrix out = Matrix::Zero(x.n(), x.d());
  for (Index k = 0; k < s.size(); ++k) out.row(s[k]) = block.row(k);
  return out;
}

Matrix pseudo_inverse(const ProblemMatrix& x) {
  return x.entries().transpose() * x.gram_inverse().entries();
}

double gram_det(const ProblemMatrix& x, const IndexSubset& s) {
  return gram_det_of(x.columns(s));
}

double gram_log_det(const ProblemMatrix& x, const IndexSubset& s) {
  const Matrix xs = x.columns(s);
  const auto l = cholesky_factor(xs * xs.transpose());
  if (!l) return -std::numeric_limits<double>::infinity();
  return 2.0 * l->diagonal().array().log().sum();
}

SpdMatrix sherman_morrison_update(const SpdMatrix& a_inverse,
                                  const Eigen::Ref<const Vector>& u,
                                  RankOneSign sign) {
  if (u.size() != a_inverse.size()) {
    throw Error(ErrorCode::DimensionMismatch, "update vector has wrong length");
  }
  const double sgn = static_cast<double>(static_cast<int>(sign));
  const Vector au = a_inverse.entries() * u;
  const double denom = 1.0 + sgn * u.dot(au);
  if (std::abs(denom) <= kDenominatorTolerance) {
    throw Error(ErrorCode::DenominatorVanishes,
                "Sherman-Morrison denominator " + std::to_string(denom));
  }
  Matrix out = a_inverse.entries() - (sgn / denom) * au * au.transpose();
  return SpdMatrix(symmetrized(out));
}

}  // namespace volsamp
