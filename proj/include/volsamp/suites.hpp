#pragma once

#include <optional>
#include <vector>

#include "volsamp/montecarlo.hpp"
#include "volsamp/oracle.hpp"

namespace volsamp {

inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kLeaveOneOutTolerance = 1e-8;
inline constexpr double kMassTolerance = 1e-10;

/// |a - b| / max(1, |a|, |b|), maximized over entries.
double scaled_deviation(const Matrix& predicted, const Matrix& estimated);

/// Every enumeration-based check that applies to (X, y) at size s. Checks
/// that need labels are skipped when `labels` is empty; the loss checks run
/// only when C(n, d) and C(n, d)^k fit the caps.
std::vector<VerificationReport> run_exact_suite(const ProblemMatrix& x,
                                                const std::optional<Vector>& labels,
                                                Index s, const OracleOptions& opts = {});

/// Monte Carlo counterparts at size s; the repeated-sampling check averages
/// `k` size-d samples.
std::vector<VerificationReport> run_mc_suite(const ProblemMatrix& x,
                                             const std::optional<Vector>& labels,
                                             Index s, Index k, const McConfig& cfg);

}  // namespace volsamp
