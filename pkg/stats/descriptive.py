"""Descriptive summaries: mean, sample standard deviation, five-number summary."""
from __future__ import annotations

import math
import statistics
from dataclasses import asdict, dataclass
from typing import Sequence

from utilities.errors import DomainError


@dataclass(frozen=True)
class StatSummary:
    n: int
    mean: float
    sample_std: float
    min: float
    q1: float
    median: float
    q3: float
    max: float

    def to_dict(self):
        return asdict(self)

    def five_numbers(self):
        return (self.min, self.q1, self.median, self.q3, self.max)


def _as_floats(xs: Sequence[float], minimum: int, what: str = "sample"):
    values = [float(x) for x in xs]
    if len(values) < minimum:
        raise DomainError(f"The {what} needs at least {minimum} values, got {len(values)}.", {"n": len(values)})
    if not all(math.isfinite(v) for v in values):
        raise DomainError(f"The {what} contains NaN or infinite values.")
    return values


def summarize(xs: Sequence[float]) -> StatSummary:
    """Mean, sample std (n - 1) and linear-interpolation quartiles."""
    values = _as_floats(xs, 2)
    mean = statistics.fmean(values)
    # quantiles(method="inclusive") interpolates linearly between order statistics.
    q1, median, q3 = statistics.quantiles(values, n=4, method="inclusive")
    lo, hi = min(values), max(values)
    return StatSummary(
        n=len(values),
        mean=mean,
        sample_std=statistics.stdev(values),
        min=lo,
        # interpolation can land an ulp outside the data when values repeat
        q1=min(max(q1, lo), hi),
        median=min(max(median, lo), hi),
        q3=min(max(q3, lo), hi),
        max=hi,
    )


def sample_variance(xs: Sequence[float]) -> float:
    return statistics.variance(_as_floats(xs, 2))
