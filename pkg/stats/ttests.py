"""Two-sided t-tests (paired, pooled two-sample, Welch) and the variance-ratio gate."""
from __future__ import annotations

import math
import statistics
from typing import Sequence

from utilities.errors import DegenerateSampleError, DomainError, StructuralError

from .descriptive import _as_floats
from .distributions import student_t_two_sided
from .results import TestResult

# A spread this small next to the data scale is rounding noise, not variance.
_REL_TOL = 1e-12


def _negligible(spread: float, *means: float) -> bool:
    return spread <= _REL_TOL * max(1.0, *(abs(m) for m in means))


def t_test_paired(xs: Sequence[float], ys: Sequence[float]) -> TestResult:
    """Paired t-test on the differences xs - ys, n - 1 degrees of freedom."""
    if len(xs) != len(ys):
        raise StructuralError(f"Paired samples differ in length ({len(xs)} vs {len(ys)}).")
    x = _as_floats(xs, 2, "first sample")
    y = _as_floats(ys, 2, "second sample")
    diffs = [a - b for a, b in zip(x, y)]
    n = len(diffs)
    sd = statistics.stdev(diffs)
    if _negligible(sd, statistics.fmean(diffs)):
        raise DegenerateSampleError(
            "The paired differences have zero variance; the t statistic is undefined.",
            {"n": n, "mean_difference": statistics.fmean(diffs)},
        )
    t = statistics.fmean(diffs) / (sd / math.sqrt(n))
    df = n - 1
    return TestResult(statistic=t, p_value=student_t_two_sided(t, df), df=float(df), method_tag="t_paired", n=n)


def t_test_two_sample_pooled(xs: Sequence[float], ys: Sequence[float]) -> TestResult:
    """Student's two-sample t-test with pooled variance, n1 + n2 - 2 df."""
    x = _as_floats(xs, 2, "first sample")
    y = _as_floats(ys, 2, "second sample")
    n1, n2 = len(x), len(y)
    df = n1 + n2 - 2
    pooled = ((n1 - 1) * statistics.variance(x) + (n2 - 1) * statistics.variance(y)) / df
    if _negligible(math.sqrt(pooled), statistics.fmean(x), statistics.fmean(y)):
        raise DegenerateSampleError("Both samples have zero variance; the pooled t statistic is undefined.")
    t = (statistics.fmean(x) - statistics.fmean(y)) / math.sqrt(pooled * (1.0 / n1 + 1.0 / n2))
    return TestResult(statistic=t, p_value=student_t_two_sided(t, df), df=float(df), method_tag="t_pooled", n=n1 + n2)


def t_test_welch(xs: Sequence[float], ys: Sequence[float]) -> TestResult:
    """Unequal-variance t-test with Welch–Satterthwaite degrees of freedom."""
    x = _as_floats(xs, 2, "first sample")
    y = _as_floats(ys, 2, "second sample")
    n1, n2 = len(x), len(y)
    v1 = statistics.variance(x) / n1
    v2 = statistics.variance(y) / n2
    if _negligible(math.sqrt(v1 + v2), statistics.fmean(x), statistics.fmean(y)):
        raise DegenerateSampleError("Both samples have zero variance; the Welch statistic is undefined.")
    t = (statistics.fmean(x) - statistics.fmean(y)) / math.sqrt(v1 + v2)
    df = (v1 + v2) ** 2 / (v1 ** 2 / (n1 - 1) + v2 ** 2 / (n2 - 1))
    return TestResult(statistic=t, p_value=student_t_two_sided(t, df), df=df, method_tag="t_welch", n=n1 + n2)


def variance_ratio(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Larger sample variance over the smaller one."""
    vx = statistics.variance(_as_floats(xs, 2, "first sample"))
    vy = statistics.variance(_as_floats(ys, 2, "second sample"))
    if vx == 0 and vy == 0:
        raise DomainError("Both samples have zero variance; the variance ratio is undefined.")
    hi, lo = max(vx, vy), min(vx, vy)
    if lo == 0:
        return math.inf
    return hi / lo
