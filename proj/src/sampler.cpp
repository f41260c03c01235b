#include "volsamp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "volsamp/combinatorics.hpp"
#include "volsamp/errors.hpp"
#include "volsamp/numeric.hpp"
#include "volsamp/parallel.hpp"

namespace volsamp {

void check_sample_size(const ProblemMatrix& x, Index s) {
  if (s < x.d() || s > x.n()) {
    throw Error(ErrorCode::RangeError,
                "sample size " + std::to_string(s) + " outside [d, n] = [" +
                    std::to_string(x.d()) + ", " + std::to_string(x.n()) + "]");
  }
}

void check_subset_cap(Index n, Index s, double cap) {
  const double count = binomial(n, s);
  if (count > cap) {
    throw Error(ErrorCode::TooManySubsets,
                "C(" + std::to_string(n) + ", " + std::to_string(s) +
                    ") exceeds the enumeration cap");
  }
}

ReverseIterativeSampler::ReverseIterativeSampler(const ProblemMatrix& x,
                                                 Index target_size, RngSeed seed)
    : x_(x), target_(target_size), rng_(seed), scratch_(x.d()) {
  check_sample_size(x, target_size);
  state_.survivors.resize(static_cast<std::size_t>(x.n()));
  for (Index i = 0; i < x.n(); ++i) state_.survivors[static_cast<std::size_t>(i)] = i;
  state_.weights.resize(x.n());
  state_.inverse_gram = x.gram_inverse().entries();
  for (Index i = 0; i < x.n(); ++i) {
    scratch_.noalias() = state_.inverse_gram * x.column(i);
    state_.weights[i] = 1.0 - x.column(i).dot(scratch_);
  }
}

void ReverseIterativeSampler::refresh() {
  ++refreshes_;
  Matrix g = Matrix::Zero(x_.d(), x_.d());
  for (Index i : state_.survivors) g.selfadjointView<Eigen::Lower>().rankUpdate(x_.column(i));
  g = g.selfadjointView<Eigen::Lower>();
  try {
    state_.inverse_gram = spd_inverse(SpdMatrix(std::move(g))).entries();
  } catch (const Error&) {
    throw Error(ErrorCode::NumericBreakdown, "surviving columns lost full rank");
  }
  for (Index i : state_.survivors) {
    scratch_.noalias() = state_.inverse_gram * x_.column(i);
    state_.weights[i] = 1.0 - x_.column(i).dot(scratch_);
  }
}

Index ReverseIterativeSampler::step() {
  if (done()) throw Error(ErrorCode::RangeError, "sampler already finished");
  auto& survivors = state_.survivors;
  auto& p = state_.weights;

  auto clamped_total = [&] {
    double total = 0.0;
    bool drifted = false;
    for (Index i : survivors) {
      if (p[i] < -kWeightClampTolerance) drifted = true;
      total += std::max(0.0, p[i]);
    }
    return drifted ? -1.0 : total;
  };

  double total = clamped_total();
  if (total <= kBreakdownTotal) {
    refresh();
    total = clamped_total();
    if (total <= kBreakdownTotal) {
      throw Error(ErrorCode::NumericBreakdown,
                  "removal weights sum to " + std::to_string(total));
    }
  }

  // Single uniform against the prefix sum; the last positive entry absorbs
  // rounding residue.
  const double target = rng_.uniform() * total;
  std::size_t chosen = survivors.size();
  std::size_t last_positive = survivors.size();
  double running = 0.0;
  for (std::size_t k = 0; k < survivors.size(); ++k) {
    const double w = std::max(0.0, p[survivors[k]]);
    if (w <= 0.0) continue;
    last_positive = k;
    running += w;
    if (target < running) {
      chosen = k;
      break;
    }
  }
  if (chosen == survivors.size()) chosen = last_positive;

  const Index removed = survivors[chosen];
  survivors.erase(survivors.begin() + static_cast<std::ptrdiff_t>(chosen));

  auto& z = state_.inverse_gram;
  scratch_.noalias() = z * x_.column(removed);
  scratch_ /= std::sqrt(p[removed]);
  for (Index j : survivors) {
    const double t = x_.column(j).dot(scratch_);
    p[j] -= t * t;
  }
  z.noalias() += scratch_ * scratch_.transpose();
  return removed;
}

IndexSubset ReverseIterativeSampler::run() {
  while (!done()) step();
  return current();
}

IndexSubset ReverseIterativeSampler::current() const {
  return IndexSubset(state_.survivors, x_.n());
}

IndexSubset reverse_iterative_sample(const ProblemMatrix& x, Index s, RngSeed seed) {
  ReverseIterativeSampler sampler(x, s, seed);
  return sampler.run();
}

Vector removal_weights(const ProblemMatrix& x, const IndexSubset& s) {
  if (s.size() <= x.d()) {
    throw Error(ErrorCode::RangeError, "removal weights need |S| > d");
  }
  const Matrix xs = x.columns(s);
  const SpdMatrix g(xs * xs.transpose());
  const Matrix zx = g.solve(xs);
  const double denom = static_cast<double>(s.size() - x.d());
  Vector out(s.size());
  for (Index k = 0; k < s.size(); ++k) {
    const double p = 1.0 - xs.col(k).dot(zx.col(k));
    out[k] = std::max(0.0, p) / denom;
  }
  return out;
}

std::vector<WeightedSubset> enumerate_volume_distribution(const ProblemMatrix& x,
                                                          Index s, double cap,
                                                          unsigned threads) {
  check_sample_size(x, s);
  check_subset_cap(x.n(), s, cap);
  auto subsets = all_subsets(x.n(), s);
  std::vector<WeightedSubset> out(subsets.size());
  const double log_norm =
      log_binomial(x.n() - x.d(), s - x.d()) + x.gram().log_determinant();
  for_each_block(subsets.size(), 256, threads,
                 [&](std::size_t, std::size_t begin, std::size_t end) {
                   for (std::size_t k = begin; k < end; ++k) {
                     const double ld = gram_log_det(x, subsets[k]);
                     out[k].subset = std::move(subsets[k]);
                     out[k].log_det = ld;
                     out[k].probability = std::isfinite(ld) ? std::exp(ld - log_norm) : 0.0;
                   }
                 });
  return out;
}

IndexSubset naive_sample(const ProblemMatrix& x, Index s, RngSeed seed, double cap) {
  const auto table = enumerate_volume_distribution(x, s, cap);
  CompensatedSum total;
  for (const auto& e : table) total.add(e.probability);
  Rng rng(seed);
  const double target = rng.uniform() * total.value();
  double running = 0.0;
  const WeightedSubset* last_positive = nullptr;
  for (const auto& e : table) {
    if (e.probability <= 0.0) continue;
    last_positive = &e;
    running += e.probability;
    if (target < running) return e.subset;
  }
  return last_positive->subset;
}

bool has_full_support(const ProblemMatrix& x, Index s, double cap) {
  check_sample_size(x, s);
  check_subset_cap(x.n(), s, cap);
  for (const auto& subset : all_subsets(x.n(), s)) {
    if (gram_det(x, subset) <= 0.0) return false;
  }
  return true;
}

}  // namespace volsamp
