"""Exact volume sampling of matrix columns and the unbiased estimators it enables.

Column indices are 0-based throughout the Python API.
"""

from ._core import (
    VolsampError,
    __version__,
    averaged_solution,
    exact_gram_inverse_expectation,
    exact_loss_expectation,
    exact_pinv_expectation,
    exact_repeated_sampling_loss,
    exact_suite,
    exact_weight_expectation,
    gram_det,
    has_full_support,
    mc_suite,
    mc_verify_loss,
    mc_verify_pinv,
    naive_sample,
    pseudo_inverse,
    removal_weights,
    sample,
    solve_full,
    solve_subset,
    volume_distribution,
)

__all__ = [
    "VolsampError",
    "__version__",
    "averaged_solution",
    "exact_gram_inverse_expectation",
    "exact_loss_expectation",
    "exact_pinv_expectation",
    "exact_repeated_sampling_loss",
    "exact_suite",
    "exact_weight_expectation",
    "gram_det",
    "has_full_support",
    "mc_suite",
    "mc_verify_loss",
    "mc_verify_pinv",
    "naive_sample",
    "pseudo_inverse",
    "removal_weights",
    "sample",
    "solve_full",
    "solve_subset",
    "volume_distribution",
]
