#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace volsamp {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Entrywise compensated accumulation of equally shaped matrices.
class CompensatedMatrixSum {
 public:
  CompensatedMatrixSum(Eigen::Index rows, Eigen::Index cols)
      : sum_(Eigen::MatrixXd::Zero(rows, cols)),
        carry_(Eigen::MatrixXd::Zero(rows, cols)) {}

  void add(const Eigen::Ref<const Eigen::MatrixXd>& x, double weight = 1.0);
  Eigen::MatrixXd value() const { return sum_ + carry_; }

 private:
  Eigen::MatrixXd sum_;
  Eigen::MatrixXd carry_;
};

/// C(n, k) as a double; saturates at +inf instead of overflowing.
double binomial(std::int64_t n, std::int64_t k) noexcept;

/// log C(n, k)
double log_binomial(std::int64_t n, std::int64_t k) noexcept;

}  // namespace volsamp
