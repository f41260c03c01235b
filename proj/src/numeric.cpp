#include "volsamp/numeric.hpp"

#include <cmath>
#include <limits>

namespace volsamp {

void CompensatedMatrixSum::add(const Eigen::Ref<const Eigen::MatrixXd>& x,
                               double weight) {
  for (Eigen::Index c = 0; c < sum_.cols(); ++c) {
    for (Eigen::Index r = 0; r < sum_.rows(); ++r) {
      const double term = weight * x(r, c);
      double& s = sum_(r, c);
      const double t = s + term;
      if (std::abs(s) >= std::abs(term)) {
        carry_(r, c) += (s - t) + term;
      } else {
        carry_(r, c) += (term - t) + s;
      }
      s = t;
    }
  }
}

double binomial(std::int64_t n, std::int64_t k) noexcept {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double out = 1.0;
  for (std::int64_t j = 1; j <= k; ++j) {
    out = out * static_cast<double>(n - k + j) / static_cast<double>(j);
    if (!std::isfinite(out)) return std::numeric_limits<double>::infinity();
  }
  return std::round(out);
}

double log_binomial(std::int64_t n, std::int64_t k) noexcept {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace volsamp
