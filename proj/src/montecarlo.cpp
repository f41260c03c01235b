#include "volsamp/montecarlo.hpp"

#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "volsamp/errors.hpp"
#include "volsamp/sampler.hpp"

namespace volsamp {

bool VerificationReport::all_passed() const {
  if (!passed) return false;
  for (const auto& sub : subchecks) {
    if (!sub.all_passed()) return false;
  }
  return true;
}

namespace detail {

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const Matrix delta = other.mean_ - mean_;
  mean_ += delta * (nb / n);
  m2_ += other.m2_ + delta.cwiseProduct(delta) * (na * nb / n);
  count_ += other.count_;
}

McEstimate MomentAccumulator::finish() const {
  McEstimate out;
  out.mean = mean_;
  out.replicates = count_;
  out.stddev = count_ > 1 ? Matrix((m2_ / static_cast<double>(count_ - 1)).cwiseSqrt())
                          : Matrix::Zero(mean_.rows(), mean_.cols());
  return out;
}

void check_config(const McConfig& cfg) {
  if (cfg.replicates < kMinReplicates) {
    throw Error(ErrorCode::RangeError, "Monte Carlo checks need at least 100 replicates");
  }
  if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0)) {
    throw Error(ErrorCode::RangeError, "confidence must lie in (0, 1)");
  }
  if (!(cfg.safety_factor > 0.0)) {
    throw Error(ErrorCode::RangeError, "safety factor must be positive");
  }
}

}  // namespace detail

VerificationReport compare_to_prediction(std::string quantity, const Matrix& predicted,
                                         const McEstimate& est, const McConfig& cfg) {
  const boost::math::normal_distribution<double> normal;
  const double z = boost::math::quantile(normal, 0.5 * (1.0 + cfg.confidence));
  const double root_n = std::sqrt(static_cast<double>(est.replicates));

  VerificationReport r;
  r.quantity = std::move(quantity);
  r.method = "monte-carlo";
  r.predicted = predicted;
  r.estimated = est.mean;
  r.replicates = est.replicates;
  r.seed = cfg.seed;

  double worst = -1.0;
  for (Index c = 0; c < predicted.cols(); ++c) {
    for (Index i = 0; i < predicted.rows(); ++i) {
      const double dev = std::abs(est.mean(i, c) - predicted(i, c));
      // Deterministic entries have zero spread; leave room for rounding.
      const double floor = 1e-12 * std::max(1.0, std::abs(predicted(i, c)));
      const double halfwidth = std::max(z * est.stddev(i, c) / root_n, floor);
      const double ratio = dev / (cfg.safety_factor * halfwidth);
      r.largest_deviation = std::max(r.largest_deviation, dev);
      if (ratio > worst) {
        worst = ratio;
        r.max_abs_deviation = dev;
        r.ci_halfwidth = halfwidth;
        r.tolerance = cfg.safety_factor * halfwidth;
      }
    }
  }
  r.passed = r.max_abs_deviation <= r.tolerance;
  return r;
}

VerificationReport mc_verify_pinv(const ProblemMatrix& x, Index s, const McConfig& cfg) {
  check_sample_size(x, s);
  const auto est = mc_estimate(cfg, x.n(), x.d(), [&](RngSeed seed) {
    return pseudo_inverse(x, reverse_iterative_sample(x, s, seed));
  });
  return compare_to_prediction("pseudo-inverse", pseudo_inverse(x), est, cfg);
}

VerificationReport mc_verify_gram_inverse(const ProblemMatrix& x, Index s,
                                          const McConfig& cfg) {
  check_sample_size(x, s);
  const Index d = x.d();
  const double factor =
      static_cast<double>(x.n() - d + 1) / static_cast<double>(s - d + 1);
  // Entries of (X_S X_Sᵀ)⁻¹ in column-major order followed by its trace.
  const auto est = mc_estimate(cfg, d * d + 1, 1, [&](RngSeed seed) {
    const Matrix inv = spd_inverse(gram(x, reverse_iterative_sample(x, s, seed))).entries();
    Matrix out(d * d + 1, 1);
    out.topRows(d * d) = inv.reshaped(d * d, 1);
    out(d * d, 0) = inv.trace();
    return out;
  });

  McEstimate matrix_part{est.mean.topRows(d * d).reshaped(d, d),
                         est.stddev.topRows(d * d).reshaped(d, d), est.replicates};
  McEstimate trace_part{est.mean.bottomRows(1), est.stddev.bottomRows(1), est.replicates};

  auto report = compare_to_prediction(
      "gram-inverse", factor * x.gram_inverse().entries(), matrix_part, cfg);
  report.subchecks.push_back(compare_to_prediction(
      "frobenius", Matrix::Constant(1, 1, factor * pseudo_inverse(x).squaredNorm()),
      trace_part, cfg));
  return report;
}

VerificationReport mc_verify_loss(const RegressionProblem& p, const McConfig& cfg) {
  const auto est = mc_estimate(cfg, 1, 1, [&](RngSeed seed) {
    return Matrix::Constant(
        1, 1, solve_subset(p, reverse_iterative_sample(p.x(), p.d(), seed)).loss);
  });
  const double target = static_cast<double>(p.d() + 1) * solve_full(p).loss;
  return compare_to_prediction("loss", Matrix::Constant(1, 1, target), est, cfg);
}

VerificationReport mc_verify_repeated(const RegressionProblem& p, Index k,
                                      const McConfig& cfg) {
  if (k < 1) throw Error(ErrorCode::RangeError, "k must be at least 1");
  const auto est = mc_estimate(cfg, 1, 1, [&](RngSeed seed) {
    Vector avg = Vector::Zero(p.d());
    for (Index t = 0; t < k; ++t) {
      const auto s = reverse_iterative_sample(p.x(), p.d(),
                                              derive_seed(seed, static_cast<std::uint64_t>(t)));
      avg += solve_subset(p, s).w;
    }
    avg /= static_cast<double>(k);
    return Matrix::Constant(1, 1, p.loss(avg));
  });
  const double target =
      (1.0 + static_cast<double>(p.d()) / static_cast<double>(k)) * solve_full(p).loss;
  auto report = compare_to_prediction("repeated-loss", Matrix::Constant(1, 1, target), est, cfg);
  report.note = "k=" + std::to_string(k);
  return report;
}

}  // namespace volsamp
