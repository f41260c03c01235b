#include <doctest.h>

#include "../support/brute_force.hpp"
#include "volsamp/errors.hpp"
#include "volsamp/regression.hpp"

using namespace volsamp;

namespace {

// X = [1, 1, 1], y = (1, 1, 0)
RegressionProblem ones() {
  Matrix x(1, 3);
  x << 1, 1, 1;
  Vector y(3);
  y << 1, 1, 0;
  return RegressionProblem(ProblemMatrix(x), y);
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("RegressionProblem rejects mismatched labels") {
  try {
    RegressionProblem(ProblemMatrix(Matrix::Identity(2, 2)), Vector::Zero(3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("solve_full") {
  const auto sol = solve_full(ones());
  CHECK(sol.w[0] == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(sol.loss == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(sol.support == IndexSubset::full(3));

  Vector y(2);
  y << 3.5, -2;
  const auto id = solve_full(RegressionProblem(ProblemMatrix(Matrix::Identity(2, 2)), y));
  CHECK((id.w - y).norm() < 1e-15);
  CHECK(id.loss < 1e-28);

  const Matrix x = brute::gaussian(3, 9, 4);
  const Vector w0 = brute::gaussian_vector(3, 5);
  const auto realizable =
      solve_full(RegressionProblem(ProblemMatrix(x), x.transpose() * w0));
  CHECK((realizable.w - w0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(realizable.loss < 1e-24);
}

TEST_CASE("solve_subset") {
  const auto p = ones();
  const auto third = solve_subset(p, IndexSubset({2}, 3));
  CHECK(third.w[0] == doctest::Approx(0.0));
  CHECK(third.loss == doctest::Approx(2.0));
  const auto first = solve_subset(p, IndexSubset({0}, 3));
  CHECK(first.w[0] == doctest::Approx(1.0));
  CHECK(first.loss == doctest::Approx(1.0));

  const auto all = solve_subset(p, IndexSubset::full(3));
  const auto full = solve_full(p);
  CHECK(std::abs(all.w[0] - full.w[0]) <= 1e-10);

  Matrix collinear(2, 3);
  collinear << 1, 0, 2, 0, 1, 0;
  const RegressionProblem q(ProblemMatrix(collinear), Vector::Ones(3));
  try {
    solve_subset(q, IndexSubset({0, 2}, 3));
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("averaged_solution") {
  const auto p = ones();
  const std::vector<IndexSubset> pair{IndexSubset({0}, 3), IndexSubset({2}, 3)};
  const auto avg = averaged_solution(p, pair);
  CHECK(avg.w[0] == doctest::Approx(0.5));
  CHECK(avg.loss == doctest::Approx(0.75));
  CHECK(avg.support == IndexSubset({0, 2}, 3));

  const std::vector<IndexSubset> one{IndexSubset({1}, 3)};
  CHECK(averaged_solution(p, one).w[0] == doctest::Approx(solve_subset(p, one[0]).w[0]));
  const std::vector<IndexSubset> same(4, IndexSubset({2}, 3));
  CHECK(averaged_solution(p, same).loss == doctest::Approx(2.0));
  CHECK_THROWS_AS(averaged_solution(p, std::vector<IndexSubset>{}), Error);
}

TEST_CASE("leave_one_out_check") {
  const auto sides = leave_one_out_check(ones(), 2);
  CHECK(sides.lhs == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(sides.rhs == doctest::Approx(2.0 / 3).epsilon(1e-14));

  Matrix x(2, 3);
  x << 1, 0, 1, 0, 1, 1;
  const RegressionProblem p(ProblemMatrix(x), brute::gaussian_vector(3, 11));
  for (Index i = 0; i < 3; ++i) {
    const auto s = leave_one_out_check(p, i);
    CHECK(std::abs(s.lhs - s.rhs) <= 1e-9 * std::max(1.0, s.lhs));
  }

  Matrix sparse(2, 3);
  sparse << 1, 0, 1, 0, 1, 0;
  const RegressionProblem q(ProblemMatrix(sparse), Vector::Ones(3));
  CHECK_THROWS_AS(leave_one_out_check(q, 1), Error);
}

TEST_CASE("augmented_det_identity") {
  const auto sides = augmented_det_identity(ones());
  CHECK(sides.lhs == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sides.rhs == doctest::Approx(2.0).epsilon(1e-14));

  const Matrix x = brute::gaussian(2, 6, 8);
  const auto realizable = augmented_det_identity(
      RegressionProblem(ProblemMatrix(x), x.transpose() * brute::gaussian_vector(2, 9)));
  CHECK(realizable.lhs == 0.0);
  CHECK(std::abs(realizable.rhs) < 1e-20);
}

TEST_CASE("property: regression identities on random instances") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Index d = 1 + static_cast<Index>(seed % 4);
    const Index n = d + 2 + static_cast<Index>(seed % 6);
    const Matrix x = brute::gaussian(d, n, 2000 + seed);
    const Vector y = brute::gaussian_vector(n, 3000 + seed);
    const RegressionProblem p(ProblemMatrix(x), y);
    const auto best = solve_full(p);

    // Independent QR route for w*.
    CHECK((best.w - brute::fit(x, y, brute::subsets(n, n)[0])).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(close(best.loss, (x.transpose() * best.w - y).squaredNorm(), 1e-9));

    for (const auto& cols : brute::subsets(n, d)) {
      const IndexSubset s(std::vector<Index>(cols.begin(), cols.end()), n);
      const auto sub = solve_subset(p, s);
      CHECK(sub.loss >= best.loss * (1 - 1e-12));
      CHECK((sub.w - brute::fit(x, y, cols)).cwiseAbs().maxCoeff() <=
            1e-8 * std::max(1.0, sub.w.cwiseAbs().maxCoeff()));
    }

    for (Index i = 0; i < n; ++i) {
      const auto s = leave_one_out_check(p, i);
      CHECK(std::abs(s.lhs - s.rhs) <= 1e-8 * std::max(1.0, s.lhs));
    }
    const auto det = augmented_det_identity(p);
    CHECK(close(det.lhs, det.rhs, 1e-9));

    // Base-times-height on every well-conditioned (d+1)-column subset.
    for (const auto& cols : brute::subsets(n, d + 1)) {
      const IndexSubset t(std::vector<Index>(cols.begin(), cols.end()), n);
      for (Index j : t) {
        const auto rest = t.without(j);
        const Eigen::JacobiSVD<Matrix> svd(
            Matrix(x(Eigen::all, std::vector<Index>(rest.begin(), rest.end()))));
        const auto sv = svd.singularValues();
        if (sv(0) / sv(sv.size() - 1) > 1e3) continue;
        const auto s = subset_det_identity(p, t, j);
        INFO("lhs=", s.lhs, " rhs=", s.rhs, " seed=", seed);
        CHECK(close(s.lhs, s.rhs, 1e-9));
      }
    }
  }
}
