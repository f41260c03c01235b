#include "volsamp/regression.hpp"

#include <algorithm>
#include <vector>

#include "volsamp/errors.hpp"

namespace volsamp {

RegressionProblem::RegressionProblem(ProblemMatrix x, Vector labels)
    : x_(std::move(x)), labels_(std::move(labels)) {
  if (labels_.size() != x_.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "got " + std::to_string(labels_.size()) + " labels for " +
                    std::to_string(x_.n()) + " columns");
  }
  if (!labels_.allFinite()) {
    throw Error(ErrorCode::RangeError, "labels contain non-finite values");
  }
}

double RegressionProblem::loss(const Eigen::Ref<const Vector>& w) const {
  return (x_.entries().transpose() * w - labels_).squaredNorm();
}

double RegressionProblem::point_loss(const Eigen::Ref<const Vector>& w, Index i) const {
  const double r = x_.column(i).dot(w) - labels_[i];
  return r * r;
}

Solution solve_full(const RegressionProblem& p) {
  Solution out;
  out.w = p.x().gram_inverse().entries() * (p.x().entries() * p.labels());
  out.loss = p.loss(out.w);
  out.support = IndexSubset::full(p.n());
  return out;
}

Solution solve_subset(const RegressionProblem& p, const IndexSubset& s) {
  const Matrix xs = p.x().columns(s);
  Vector ys(s.size());
  for (Index k = 0; k < s.size(); ++k) ys[k] = p.labels()[s[k]];
  const SpdMatrix g(xs * xs.transpose());
  Solution out;
  out.w = g.solve(xs * ys);
  out.loss = p.loss(out.w);
  out.support = s;
  return out;
}

Solution averaged_solution(const RegressionProblem& p,
                           std::span<const IndexSubset> samples) {
  if (samples.empty()) {
    throw Error(ErrorCode::RangeError, "averaging needs at least one sample");
  }
  Vector sum = Vector::Zero(p.d());
  std::vector<Index> merged;
  for (const auto& s : samples) {
    sum += solve_subset(p, s).w;
    merged.insert(merged.end(), s.begin(), s.end());
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  Solution out;
  out.w = sum / static_cast<double>(samples.size());
  out.loss = p.loss(out.w);
  out.support = IndexSubset(std::move(merged), p.n());
  return out;
}

IdentitySides leave_one_out_check(const RegressionProblem& p, Index i) {
  const auto rest = IndexSubset::full(p.n()).without(i);
  const Solution dropped = solve_subset(p, rest);
  const Solution full = solve_full(p);
  const auto xi = p.x().column(i);
  const double leverage = xi.dot(p.x().gram_inverse().entries() * xi);
  return {full.loss, dropped.loss - leverage * p.point_loss(dropped.w, i)};
}

IdentitySides augmented_det_identity(const RegressionProblem& p) {
  Matrix augmented(p.d() + 1, p.n());
  augmented.topRows(p.d()) = p.x().entries();
  augmented.row(p.d()) = p.labels().transpose();
  return {gram_det_of(augmented), p.x().gram().determinant() * solve_full(p).loss};
}

IdentitySides subset_det_identity(const RegressionProblem& p, const IndexSubset& t,
                                  Index j) {
  if (t.size() != p.d() + 1) {
    throw Error(ErrorCode::RangeError, "subset must have d+1 columns");
  }
  Matrix augmented(p.d() + 1, t.size());
  for (Index k = 0; k < t.size(); ++k) {
    augmented.col(k).head(p.d()) = p.x().column(t[k]);
    augmented(p.d(), k) = p.labels()[t[k]];
  }
  const auto rest = t.without(j);
  const Solution sub = solve_subset(p, rest);
  return {gram_det_of(augmented), gram_det(p.x(), rest) * p.point_loss(sub.w, j)};
}

}  // namespace volsamp
