"""Statistics for comparing NS series: summaries, Shapiro–Wilk, t-tests."""

from .descriptive import StatSummary, sample_variance, summarize
from .distributions import (
    normal_ppf,
    regularized_beta,
    student_t_cdf,
    student_t_two_sided,
)
from .results import TestResult
from .shapiro import shapiro_wilk, swilk_coefficients
from .ttests import t_test_paired, t_test_two_sample_pooled, t_test_welch, variance_ratio

__all__ = [
    "StatSummary",
    "sample_variance",
    "summarize",
    "normal_ppf",
    "regularized_beta",
    "student_t_cdf",
    "student_t_two_sided",
    "TestResult",
    "shapiro_wilk",
    "swilk_coefficients",
    "t_test_paired",
    "t_test_two_sample_pooled",
    "t_test_welch",
    "variance_ratio",
]
