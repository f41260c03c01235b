#include "volsamp/oracle.hpp"

#include <cmath>
#include <vector>

#include "volsamp/combinatorics.hpp"
#include "volsamp/errors.hpp"
#include "volsamp/numeric.hpp"
#include "volsamp/parallel.hpp"

namespace volsamp {

std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::PseudoInverse: return "pseudo-inverse";
    case Quantity::GramInverse: return "gram-inverse";
    case Quantity::Covariance: return "covariance";
    case Quantity::Frobenius: return "frobenius";
    case Quantity::Loss: return "loss";
    case Quantity::WeightVector: return "weight-vector";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kBlock = 128;

bool complete(const std::vector<WeightedSubset>& table) {
  for (const auto& e : table) {
    if (e.probability <= 0.0) return false;
  }
  return true;
}

// Σ P(S)·f(S) over subsets with positive probability. One compensated
// partial sum per fixed block, reduced in block order.
template <class Fn>
Matrix expectation(const std::vector<WeightedSubset>& table, Index rows, Index cols,
                   unsigned threads, Fn&& f) {
  const std::size_t blocks = (table.size() + kBlock - 1) / kBlock;
  std::vector<Matrix> partial(blocks);
  for_each_block(table.size(), kBlock, threads,
                 [&](std::size_t b, std::size_t begin, std::size_t end) {
                   CompensatedMatrixSum acc(rows, cols);
                   for (std::size_t k = begin; k < end; ++k) {
                     if (table[k].probability <= 0.0) continue;
                     acc.add(f(table[k].subset), table[k].probability);
                   }
                   partial[b] = acc.value();
                 });
  CompensatedMatrixSum total(rows, cols);
  for (const auto& m : partial) total.add(m);
  return total.value();
}

Matrix scalar_matrix(double v) { return Matrix::Constant(1, 1, v); }

}  // namespace

ExactExpectation exact_pinv_expectation(const ProblemMatrix& x, Index s,
                                        const OracleOptions& opts) {
  const auto table = enumerate_volume_distribution(x, s, opts.cap, opts.threads);
  return {Quantity::PseudoInverse,
          expectation(table, x.n(), x.d(), opts.threads,
                      [&](const IndexSubset& S) { return pseudo_inverse(x, S); }),
          complete(table)};
}

ExactExpectation exact_gram_inverse_expectation(const ProblemMatrix& x, Index s,
                                                const OracleOptions& opts) {
  const auto table = enumerate_volume_distribution(x, s, opts.cap, opts.threads);
  return {Quantity::GramInverse,
          expectation(table, x.d(), x.d(), opts.threads,
                      [&](const IndexSubset& S) {
                        return spd_inverse(gram(x, S)).entries();
                      }),
          complete(table)};
}

ExactExpectation exact_covariance(const ProblemMatrix& x, Index s,
                                  const OracleOptions& opts) {
  const auto table = enumerate_volume_distribution(x, s, opts.cap, opts.threads);
  const Matrix second = expectation(table, x.d(), x.d(), opts.threads,
                                    [&](const IndexSubset& S) -> Matrix {
                                      const Matrix pinv = pseudo_inverse(x, S);
                                      return pinv.transpose() * pinv;
                                    });
  const Matrix full = pseudo_inverse(x);
  return {Quantity::Covariance, second - full.transpose() * full, complete(table)};
}

ExactExpectation exact_frobenius_expectation(const ProblemMatrix& x, Index s,
                                             const OracleOptions& opts) {
  const auto table = enumerate_volume_distribution(x, s, opts.cap, opts.threads);
  return {Quantity::Frobenius,
          expectation(table, 1, 1, opts.threads,
                      [&](const IndexSubset& S) {
                        return scalar_matrix(pseudo_inverse(x, S).squaredNorm());
                      }),
          complete(table)};
}

ExactExpectation exact_loss_expectation(const RegressionProblem& p,
                                        const OracleOptions& opts) {
  const auto table = enumerate_volume_distribution(p.x(), p.d(), opts.cap, opts.threads);
  return {Quantity::Loss,
          expectation(table, 1, 1, opts.threads,
                      [&](const IndexSubset& S) {
                        return scalar_matrix(solve_subset(p, S).loss);
                      }),
          complete(table)};
}

ExactExpectation exact_weight_expectation(const RegressionProblem& p, Index s,
                                          const OracleOptions& opts) {
  const auto table = enumerate_volume_distribution(p.x(), s, opts.cap, opts.threads);
  return {Quantity::WeightVector,
          expectation(table, p.d(), 1, opts.threads,
                      [&](const IndexSubset& S) -> Matrix { return solve_subset(p, S).w; }),
          complete(table)};
}

double exact_prediction_variance(const RegressionProblem& p, const OracleOptions& opts) {
  const auto table = enumerate_volume_distribution(p.x(), p.d(), opts.cap, opts.threads);
  const Vector best = solve_full(p).w;
  return expectation(table, 1, 1, opts.threads, [&](const IndexSubset& S) {
           const Vector diff = solve_subset(p, S).w - best;
           return scalar_matrix((p.x().entries().transpose() * diff).squaredNorm());
         })(0, 0);
}

double exact_repeated_sampling_loss(const RegressionProblem& p, Index k,
                                    const OracleOptions& opts) {
  if (k < 1) throw Error(ErrorCode::RangeError, "k must be at least 1");
  const double per_draw = binomial(p.n(), p.d());
  if (std::pow(per_draw, static_cast<double>(k)) > opts.tuple_cap) {
    throw Error(ErrorCode::TooManySubsets, "C(n, d)^k exceeds the tuple cap");
  }
  const auto table = enumerate_volume_distribution(p.x(), p.d(), opts.cap, opts.threads);
  std::vector<double> prob;
  std::vector<Vector> weights;
  for (const auto& e : table) {
    if (e.probability <= 0.0) continue;
    prob.push_back(e.probability);
    weights.push_back(solve_subset(p, e.subset).w);
  }
  const std::size_t base = prob.size();
  std::size_t tuples = 1;
  for (Index j = 0; j < k; ++j) tuples *= base;

  const std::size_t blocks = (tuples + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks);
  for_each_block(tuples, kBlock, opts.threads,
                 [&](std::size_t b, std::size_t begin, std::size_t end) {
                   CompensatedSum acc;
                   Vector avg(p.d());
                   for (std::size_t t = begin; t < end; ++t) {
                     std::size_t code = t;
                     double weight = 1.0;
                     avg.setZero();
                     for (Index j = 0; j < k; ++j) {
                       const std::size_t pick = code % base;
                       code /= base;
                       weight *= prob[pick];
                       avg += weights[pick];
                     }
                     avg /= static_cast<double>(k);
                     acc.add(weight * p.loss(avg));
                   }
                   partial[b] = acc.value();
                 });
  CompensatedSum total;
  for (double v : partial) total.add(v);
  return total.value();
}

double distribution_mass(const ProblemMatrix& x, Index s, const OracleOptions& opts) {
  CompensatedSum total;
  for (const auto& e : enumerate_volume_distribution(x, s, opts.cap, opts.threads)) {
    total.add(e.probability);
  }
  return total.value();
}

double layer_total_variation(const ProblemMatrix& x, Index s, const OracleOptions& opts) {
  if (s >= x.n()) throw Error(ErrorCode::RangeError, "layer check needs s < n");
  const auto lower = enumerate_volume_distribution(x, s, opts.cap, opts.threads);
  const auto upper = enumerate_volume_distribution(x, s + 1, opts.cap, opts.threads);
  std::vector<CompensatedSum> pushed(lower.size());
  for (const auto& e : upper) {
    if (e.probability <= 0.0) continue;
    const Vector w = removal_weights(x, e.subset);
    for (Index k = 0; k < e.subset.size(); ++k) {
      const auto child = e.subset.without(e.subset[k]);
      pushed[lexicographic_rank(child)].add(e.probability * w[k]);
    }
  }
  CompensatedSum tv;
  for (std::size_t k = 0; k < lower.size(); ++k) {
    tv.add(std::abs(pushed[k].value() - lower[k].probability));
  }
  return 0.5 * tv.value();
}

bool layer_consistency_check(const ProblemMatrix& x, Index s, const OracleOptions& opts) {
  return layer_total_variation(x, s, opts) <= kLayerTolerance;
}

CauchyBinetSums cauchy_binet(const ProblemMatrix& x, Index s, const OracleOptions& opts) {
  check_sample_size(x, s);
  check_subset_cap(x.n(), s, opts.cap);
  CompensatedSum total;
  for (const auto& subset : all_subsets(x.n(), s)) total.add(gram_det(x, subset));
  return {total.value(),
          binomial(x.n() - x.d(), s - x.d()) * x.gram().determinant()};
}

}  // namespace volsamp
