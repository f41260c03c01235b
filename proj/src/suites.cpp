#include "volsamp/suites.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "volsamp/errors.hpp"
#include "volsamp/numeric.hpp"

namespace volsamp {

double scaled_deviation(const Matrix& predicted, const Matrix& estimated) {
  double worst = 0.0;
  for (Index c = 0; c < predicted.cols(); ++c) {
    for (Index r = 0; r < predicted.rows(); ++r) {
      const double a = predicted(r, c);
      const double b = estimated(r, c);
      const double scale = std::max({1.0, std::abs(a), std::abs(b)});
      worst = std::max(worst, std::abs(a - b) / scale);
    }
  }
  return worst;
}

namespace {

VerificationReport exact(std::string quantity, Matrix predicted, Matrix estimated,
                         double tolerance, double deviation, std::string note = {}) {
  VerificationReport r;
  r.quantity = std::move(quantity);
  r.method = "exact";
  r.predicted = std::move(predicted);
  r.estimated = std::move(estimated);
  r.max_abs_deviation = deviation;
  r.largest_deviation = deviation;
  r.tolerance = tolerance;
  r.passed = deviation <= tolerance;
  r.note = std::move(note);
  return r;
}

VerificationReport equality(std::string quantity, Matrix predicted, Matrix estimated,
                            double tolerance = kExactTolerance) {
  const double dev = scaled_deviation(predicted, estimated);
  return exact(std::move(quantity), std::move(predicted), std::move(estimated), tolerance,
               dev, "equality");
}

/// estimated ⪯ predicted, measured by the most negative eigenvalue of the gap.
VerificationReport psd_order(std::string quantity, Matrix predicted, Matrix estimated) {
  const Matrix gap = predicted - estimated;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (gap + gap.transpose()),
                                                  Eigen::EigenvaluesOnly);
  const double dev = std::max(0.0, -eig.eigenvalues().minCoeff());
  return exact(std::move(quantity), std::move(predicted), std::move(estimated),
               kExactTolerance, dev, "psd-order branch verified");
}

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

bool fits(double count, double cap) { return count <= cap; }

}  // namespace

std::vector<VerificationReport> run_exact_suite(const ProblemMatrix& x,
                                                const std::optional<Vector>& labels,
                                                Index s, const OracleOptions& opts) {
  check_sample_size(x, s);
  check_subset_cap(x.n(), s, opts.cap);
  const Index d = x.d();
  const Index n = x.n();
  std::vector<VerificationReport> out;

  out.push_back(equality("distribution-mass", scalar(1.0),
                         scalar(distribution_mass(x, s, opts)), kMassTolerance));

  {
    std::vector<double> predicted, estimated;
    for (Index level = d; level <= n; ++level) {
      if (!fits(binomial(n, level), opts.cap)) continue;
      const auto cb = cauchy_binet(x, level, opts);
      predicted.push_back(cb.predicted);
      estimated.push_back(cb.subset_sum);
    }
    Matrix p = Eigen::Map<Vector>(predicted.data(), static_cast<Index>(predicted.size()));
    Matrix e = Eigen::Map<Vector>(estimated.data(), static_cast<Index>(estimated.size()));
    double dev = 0.0;
    for (Index k = 0; k < p.rows(); ++k) {
      dev = std::max(dev, std::abs(p(k, 0) - e(k, 0)) / std::abs(p(k, 0)));
    }
    out.push_back(exact("cauchy-binet", p, e, kExactTolerance, dev, "relative, all levels"));
  }

  {
    std::vector<double> tv;
    for (Index level = d; level < n; ++level) {
      if (!fits(binomial(n, level + 1), opts.cap) || !fits(binomial(n, level), opts.cap)) {
        continue;
      }
      tv.push_back(layer_total_variation(x, level, opts));
    }
    Matrix e = Eigen::Map<Vector>(tv.data(), static_cast<Index>(tv.size()));
    const double dev = e.size() ? e.maxCoeff() : 0.0;
    out.push_back(exact("layer-consistency", Matrix::Zero(e.rows(), 1), e, kLayerTolerance,
                        dev, "total variation per level"));
  }

  out.push_back(equality("pseudo-inverse", pseudo_inverse(x),
                         exact_pinv_expectation(x, s, opts).value));

  const double factor = static_cast<double>(n - d + 1) / static_cast<double>(s - d + 1);
  const double shrink = static_cast<double>(n - s) / static_cast<double>(s - d + 1);
  const Matrix pinv = pseudo_inverse(x);
  const Matrix second_full = pinv.transpose() * pinv;
  const auto gram_inv = exact_gram_inverse_expectation(x, s, opts);
  const auto cov = exact_covariance(x, s, opts);
  const auto frob = exact_frobenius_expectation(x, s, opts);
  const double frob_pred = factor * pinv.squaredNorm();
  if (gram_inv.support_complete) {
    out.push_back(equality("gram-inverse", factor * x.gram_inverse().entries(), gram_inv.value));
    out.push_back(equality("covariance", shrink * second_full, cov.value));
    out.push_back(equality("frobenius", scalar(frob_pred), frob.value));
    out.push_back(equality("covariance-trace", scalar(shrink * pinv.squaredNorm()),
                           scalar(cov.value.trace())));
  } else {
    out.push_back(psd_order("gram-inverse", factor * x.gram_inverse().entries(),
                            gram_inv.value));
    out.push_back(psd_order("covariance", shrink * second_full, cov.value));
    const double excess = std::max(0.0, frob.scalar() - frob_pred) /
                          std::max(1.0, std::abs(frob_pred));
    out.push_back(exact("frobenius", scalar(frob_pred), frob.value, kExactTolerance, excess,
                        "inequality branch verified"));
  }

  if (!labels) return out;
  const RegressionProblem p(x, *labels);
  const Solution best = solve_full(p);

  out.push_back(equality("weight-vector", best.w, exact_weight_expectation(p, s, opts).value));

  if (fits(binomial(n, d), opts.cap)) {
    const bool general = has_full_support(x, d, opts.cap);
    const auto loss = exact_loss_expectation(p, opts);
    const double target = static_cast<double>(d + 1) * best.loss;
    if (general) {
      out.push_back(equality("loss", scalar(target), loss.value));
      out.push_back(equality("prediction-variance", scalar(static_cast<double>(d) * best.loss),
                             scalar(exact_prediction_variance(p, opts))));
      for (Index k = 1; k <= 3; ++k) {
        if (!fits(std::pow(binomial(n, d), static_cast<double>(k)), opts.tuple_cap)) break;
        const double pred =
            (1.0 + static_cast<double>(d) / static_cast<double>(k)) * best.loss;
        auto r = equality("repeated-loss", scalar(pred),
                          scalar(exact_repeated_sampling_loss(p, k, opts)));
        r.note = "k=" + std::to_string(k);
        out.push_back(std::move(r));
      }
    } else {
      const double excess =
          std::max(0.0, loss.scalar() - target) / std::max(1.0, std::abs(target));
      out.push_back(exact("loss", scalar(target), loss.value, kExactTolerance, excess,
                          "inequality branch verified"));
    }
  }

  {
    double dev = 0.0;
    std::vector<double> lhs, rhs;
    for (Index i = 0; i < n; ++i) {
      IdentitySides sides;
      try {
        sides = leave_one_out_check(p, i);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularMatrix) throw;
        continue;
      }
      lhs.push_back(sides.lhs);
      rhs.push_back(sides.rhs);
      dev = std::max(dev, std::abs(sides.lhs - sides.rhs) / std::max(1.0, std::abs(sides.lhs)));
    }
    out.push_back(exact("leave-one-out",
                        Eigen::Map<Vector>(lhs.data(), static_cast<Index>(lhs.size())),
                        Eigen::Map<Vector>(rhs.data(), static_cast<Index>(rhs.size())),
                        kLeaveOneOutTolerance, dev, "columns whose removal keeps full rank"));
  }

  const auto det = augmented_det_identity(p);
  out.push_back(equality("augmented-determinant", scalar(det.rhs), scalar(det.lhs)));
  return out;
}

std::vector<VerificationReport> run_mc_suite(const ProblemMatrix& x,
                                             const std::optional<Vector>& labels,
                                             Index s, Index k, const McConfig& cfg) {
  std::vector<VerificationReport> out;
  out.push_back(mc_verify_pinv(x, s, cfg));
  out.push_back(mc_verify_gram_inverse(x, s, cfg));
  if (!labels) return out;
  const RegressionProblem p(x, *labels);
  out.push_back(mc_verify_loss(p, cfg));
  out.push_back(mc_verify_repeated(p, k, cfg));
  return out;
}

}  // namespace volsamp
