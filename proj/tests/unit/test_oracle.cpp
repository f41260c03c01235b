#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "../support/brute_force.hpp"
#include "volsamp/errors.hpp"
#include "volsamp/oracle.hpp"

using namespace volsamp;

namespace {

Matrix two_by_three() {
  Matrix x(2, 3);
  x << 1, 0, 1, 0, 1, 1;
  return x;
}

RegressionProblem ones() {
  Matrix x(1, 3);
  x << 1, 1, 1;
  Vector y(3);
  y << 1, 1, 0;
  return RegressionProblem(ProblemMatrix(x), y);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix tri() {
  Matrix m(2, 2);
  m << 2, -1, -1, 2;
  return m;
}

}  // namespace

TEST_CASE("exact_pinv_expectation") {
  const ProblemMatrix id(Matrix::Identity(2, 2));
  CHECK(max_abs(exact_pinv_expectation(id, 2).value - Matrix::Identity(2, 2)) < 1e-15);

  const ProblemMatrix x(two_by_three());
  Matrix expected(3, 2);
  expected << 2.0 / 3, -1.0 / 3, -1.0 / 3, 2.0 / 3, 1.0 / 3, 1.0 / 3;
  CHECK(max_abs(exact_pinv_expectation(x, 2).value - expected) <= 1e-12);
  CHECK(max_abs(exact_pinv_expectation(x, 3).value - expected) <= 1e-15);
}

TEST_CASE("exact_gram_inverse_expectation") {
  const ProblemMatrix x(two_by_three());
  const auto e = exact_gram_inverse_expectation(x, 2);
  CHECK(e.support_complete);
  CHECK(max_abs(e.value - (2.0 / 3) * tri()) <= 1e-12);
  CHECK(max_abs(exact_gram_inverse_expectation(x, 3).value - x.gram_inverse().entries()) <=
        1e-15);

  Matrix collinear(2, 4);
  collinear << 1, 0, 2, 1, 0, 1, 0, 1;
  const ProblemMatrix c(collinear);
  const auto ec = exact_gram_inverse_expectation(c, 2);
  CHECK_FALSE(ec.support_complete);
  const double factor = 3.0;
  const Matrix gap = factor * c.gram_inverse().entries() - ec.value;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(gap);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
  CHECK(eig.eigenvalues().maxCoeff() > 1e-6);
}

TEST_CASE("exact_covariance and Frobenius") {
  const ProblemMatrix x(two_by_three());
  CHECK(max_abs(exact_covariance(x, 3).value) <= 1e-15);
  CHECK(max_abs(exact_covariance(x, 2).value - tri() / 3.0) <= 1e-12);
  CHECK(exact_frobenius_expectation(x, 2).scalar() == doctest::Approx(8.0 / 3).epsilon(1e-13));
  CHECK((exact_covariance(x, 2).value + x.gram_inverse().entries()).trace() ==
        doctest::Approx(8.0 / 3).epsilon(1e-13));
}

TEST_CASE("exact_loss_expectation") {
  CHECK(exact_loss_expectation(ones()).scalar() == doctest::Approx(4.0 / 3).epsilon(1e-14));

  const Matrix x = two_by_three();
  const Vector w0 = Vector::Constant(2, 0.7);
  CHECK(std::abs(exact_loss_expectation(
                     RegressionProblem(ProblemMatrix(x), x.transpose() * w0))
                     .scalar()) < 1e-25);

  const RegressionProblem p(ProblemMatrix(x), brute::gaussian_vector(3, 17));
  const double best = solve_full(p).loss;
  CHECK(std::abs(exact_loss_expectation(p).scalar() - 3 * best) <= 1e-10 * std::max(1.0, best));
}

TEST_CASE("exact_weight_expectation") {
  CHECK(exact_weight_expectation(ones(), 1).value(0, 0) ==
        doctest::Approx(2.0 / 3).epsilon(1e-14));

  const Matrix x = brute::gaussian(2, 6, 21);
  const Vector w0 = brute::gaussian_vector(2, 22);
  const RegressionProblem realizable(ProblemMatrix(x), x.transpose() * w0);
  for (Index s = 2; s <= 6; ++s) {
    CHECK(max_abs(exact_weight_expectation(realizable, s).value - w0) <= 1e-12);
  }

  const RegressionProblem p(ProblemMatrix(two_by_three()), brute::gaussian_vector(3, 23));
  CHECK(max_abs(exact_weight_expectation(p, 2).value - solve_full(p).w) <= 1e-10);
}

TEST_CASE("exact_repeated_sampling_loss") {
  const auto p = ones();
  CHECK(exact_repeated_sampling_loss(p, 1) ==
        doctest::Approx(exact_loss_expectation(p).scalar()).epsilon(1e-14));
  CHECK(exact_repeated_sampling_loss(p, 2) == doctest::Approx(1.0).epsilon(1e-14));

  const Matrix x = brute::gaussian(2, 5, 31);
  const RegressionProblem realizable(ProblemMatrix(x),
                                     x.transpose() * brute::gaussian_vector(2, 32));
  CHECK(std::abs(exact_repeated_sampling_loss(realizable, 3)) < 1e-24);

  const RegressionProblem big(ProblemMatrix(brute::gaussian(2, 12, 33)),
                              brute::gaussian_vector(12, 34));
  try {
    exact_repeated_sampling_loss(big, 3);  // 66^3 tuples
    FAIL("expected TooManySubsets");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManySubsets);
  }
}

TEST_CASE("layer_consistency_check") {
  const ProblemMatrix x(two_by_three());
  CHECK(layer_consistency_check(x, 2));

  Matrix zero_col(2, 3);
  zero_col << 1, 0, 0, 0, 1, 0;
  CHECK(layer_consistency_check(ProblemMatrix(zero_col), 2));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProblemMatrix r(brute::gaussian(2, 6, 40 + seed));
    CHECK(layer_consistency_check(r, 5));
  }
}

TEST_CASE("oracle expectations agree with brute-force enumeration") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Index d = 1 + static_cast<Index>(seed % 3);
    const Index n = d + 3;
    const Matrix raw = brute::gaussian(d, n, 700 + seed);
    const Vector y = brute::gaussian_vector(n, 800 + seed);
    const ProblemMatrix x(raw);
    const RegressionProblem p(x, y);
    for (Index s = d; s <= n; ++s) {
      Matrix pinv = Matrix::Zero(n, d);
      Matrix ginv = Matrix::Zero(d, d);
      Vector w = Vector::Zero(d);
      for (const auto& [cols, prob] : brute::volume_distribution(raw, s)) {
        if (prob == 0.0) continue;
        const Matrix mp = brute::masked_pinv(raw, cols);
        pinv += prob * mp;
        ginv += prob * mp.transpose() * mp;
        w += prob * brute::fit(raw, y, cols);
      }
      CHECK(max_abs(exact_pinv_expectation(x, s).value - pinv) <= 1e-9);
      CHECK(max_abs(exact_gram_inverse_expectation(x, s).value - ginv) <=
            1e-9 * std::max(1.0, max_abs(ginv)));
      CHECK(max_abs(exact_weight_expectation(p, s).value - w) <=
            1e-9 * std::max(1.0, max_abs(w)));
    }
  }
}

TEST_CASE("oracle results do not depend on the thread count") {
  const ProblemMatrix x(brute::gaussian(3, 11, 55));
  OracleOptions one;
  OracleOptions many;
  many.threads = 4;
  CHECK(exact_pinv_expectation(x, 5, one).value == exact_pinv_expectation(x, 5, many).value);
  const RegressionProblem p(x, brute::gaussian_vector(11, 56));
  CHECK(exact_repeated_sampling_loss(p, 2, one) == exact_repeated_sampling_loss(p, 2, many));
}

TEST_CASE("cauchy_binet and distribution mass") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Index d = 1 + static_cast<Index>(seed % 3);
    const Index n = 10;
    const Matrix raw = brute::gaussian(d, n, 900 + seed);
    const ProblemMatrix x(raw);
    for (Index s = d; s <= n; ++s) {
      const auto cb = cauchy_binet(x, s);
      double lu_sum = 0.0;
      for (const auto& c : brute::subsets(n, s)) lu_sum += brute::volume(raw, c);
      CHECK(std::abs(cb.subset_sum - cb.predicted) <= 1e-9 * cb.predicted);
      CHECK(std::abs(cb.subset_sum - lu_sum) <= 1e-9 * lu_sum);
      CHECK(std::abs(distribution_mass(x, s) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("prediction variance equals d times the optimal loss") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Index d = 1 + static_cast<Index>(seed % 3);
    const RegressionProblem p(ProblemMatrix(brute::gaussian(d, 7, 60 + seed)),
                              brute::gaussian_vector(7, 70 + seed));
    const double best = solve_full(p).loss;
    CHECK(exact_prediction_variance(p) ==
          doctest::Approx(static_cast<double>(d) * best).epsilon(1e-9));
  }
}
