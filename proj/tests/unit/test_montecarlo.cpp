#include <doctest.h>

#include "../support/brute_force.hpp"
#include "volsamp/errors.hpp"
#include "volsamp/montecarlo.hpp"
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

McConfig config(std::size_t replicates, std::uint64_t seed) {
  McConfig cfg;
  cfg.replicates = replicates;
  cfg.seed = RngSeed{seed};
  return cfg;
}

}  // namespace

TEST_CASE("report fields are consistent") {
  const auto r = mc_verify_pinv(ProblemMatrix(two_by_three()), 2, config(2000, 3));
  CHECK(r.method == "monte-carlo");
  CHECK(r.replicates == 2000);
  CHECK(r.tolerance == doctest::Approx(1.5 * r.ci_halfwidth));
  CHECK(r.passed == (r.max_abs_deviation <= r.tolerance));
  CHECK(r.largest_deviation >= r.max_abs_deviation);
}

TEST_CASE("mc_verify_pinv") {
  const ProblemMatrix x(two_by_three());
  const auto whole = mc_verify_pinv(x, 3, config(100, 1));
  CHECK(whole.passed);
  CHECK(whole.largest_deviation <= 1e-15);

  CHECK(mc_verify_pinv(x, 2, config(100000, 2)).passed);

  const ProblemMatrix wide(brute::gaussian(5, 50, 77));
  CHECK(mc_verify_pinv(wide, 10, config(100000, 3)).passed);
}

TEST_CASE("mc_verify_gram_inverse") {
  const ProblemMatrix x(two_by_three());
  const auto whole = mc_verify_gram_inverse(x, 3, config(100, 4));
  CHECK(whole.all_passed());
  CHECK(whole.largest_deviation <= 1e-14);

  const ProblemMatrix g(brute::gaussian(3, 30, 78));
  const auto r = mc_verify_gram_inverse(g, 3, config(100000, 5));
  CHECK(r.predicted.isApprox(28.0 * g.gram_inverse().entries()));
  CHECK(r.all_passed());
  REQUIRE(r.subchecks.size() == 1);
  CHECK(r.subchecks[0].quantity == "frobenius");

  const auto mid = mc_verify_gram_inverse(g, 15, config(20000, 6));
  CHECK(mid.all_passed());
}

TEST_CASE("mc_verify_loss") {
  const Matrix x = brute::gaussian(3, 12, 79);
  const RegressionProblem realizable(ProblemMatrix(x),
                                     x.transpose() * brute::gaussian_vector(3, 80));
  const auto zero = mc_verify_loss(realizable, config(200, 7));
  CHECK(std::abs(zero.estimated(0, 0)) < 1e-20);
  CHECK(zero.passed);

  const auto hand = mc_verify_loss(ones(), config(10000, 8));
  CHECK(hand.predicted(0, 0) == doctest::Approx(4.0 / 3));
  CHECK(hand.passed);

  const RegressionProblem p(ProblemMatrix(brute::gaussian(4, 40, 81)),
                            brute::gaussian_vector(40, 82));
  const auto r = mc_verify_loss(p, config(100000, 9));
  CHECK(r.predicted(0, 0) == doctest::Approx(5.0 * solve_full(p).loss));
  CHECK(r.passed);
}

TEST_CASE("mc_verify_repeated") {
  const auto k1 = mc_verify_repeated(ones(), 1, config(10000, 10));
  CHECK(k1.predicted(0, 0) == doctest::Approx(mc_verify_loss(ones(), config(100, 1)).predicted(0, 0)));
  CHECK(k1.passed);

  const auto k2 = mc_verify_repeated(ones(), 2, config(10000, 11));
  CHECK(k2.predicted(0, 0) == doctest::Approx(exact_repeated_sampling_loss(ones(), 2)));
  CHECK(k2.passed);

  const RegressionProblem p(ProblemMatrix(brute::gaussian(4, 40, 83)),
                            brute::gaussian_vector(40, 84));
  const auto k8 = mc_verify_repeated(p, 8, config(20000, 12));
  CHECK(k8.predicted(0, 0) == doctest::Approx(1.5 * solve_full(p).loss));
  CHECK(k8.passed);
}

TEST_CASE("determinism across reruns and thread counts") {
  const ProblemMatrix x(brute::gaussian(3, 20, 85));
  auto cfg = config(3000, 13);
  const auto a = mc_verify_pinv(x, 6, cfg);
  const auto b = mc_verify_pinv(x, 6, cfg);
  cfg.threads = 3;
  const auto c = mc_verify_pinv(x, 6, cfg);
  CHECK(a.estimated == b.estimated);
  CHECK(a.estimated == c.estimated);
  CHECK(a.ci_halfwidth == c.ci_halfwidth);
}

TEST_CASE("interval calibration on true-null checks") {
  const RegressionProblem p(ProblemMatrix(brute::gaussian(2, 10, 86)),
                            brute::gaussian_vector(10, 87));
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    if (!mc_verify_loss(p, config(2000, 1000 + seed)).passed) ++failures;
  }
  CHECK(failures <= 2);
}

TEST_CASE("quadrupling replicates halves the interval") {
  const RegressionProblem p(ProblemMatrix(brute::gaussian(2, 10, 88)),
                            brute::gaussian_vector(10, 89));
  const double small = mc_verify_loss(p, config(5000, 20)).ci_halfwidth;
  const double large = mc_verify_loss(p, config(20000, 21)).ci_halfwidth;
  CHECK(small / large == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("config validation") {
  const ProblemMatrix x(two_by_three());
  CHECK_THROWS_AS(mc_verify_pinv(x, 2, config(99, 1)), Error);
  auto cfg = config(1000, 1);
  cfg.confidence = 1.0;
  CHECK_THROWS_AS(mc_verify_pinv(x, 2, cfg), Error);
  CHECK_THROWS_AS(mc_verify_pinv(x, 1, config(1000, 1)), Error);
}
