"""Shapiro–Wilk W test for normality, Royston's AS R94 algorithm (3 <= n <= 5000).

Coefficients come from normal scores at (i - 3/8)/(n + 1/4) with polynomial
corrections for the two extreme weights; the p-value uses Royston's
normalizing transform of log(1 - W) (exact for n = 3).
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from utilities.errors import DegenerateSampleError, DomainError

from .distributions import normal_ppf, normal_sf
from .results import TestResult

MIN_N = 3
MAX_N = 5000

# Polynomial coefficients, lowest order first.
_C1 = (0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
_C3 = (0.544, -0.39978, 0.025054, -6.714e-4)
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)
_C6 = (-0.4803, -0.082676, 0.0030302)
_G = (-2.273, 0.459)

_SQRTH = math.sqrt(0.5)
_SMALL = 1e-19


def _poly(coefficients: Sequence[float], x: float) -> float:
    return float(np.polynomial.polynomial.polyval(x, coefficients))


def swilk_coefficients(n: int) -> np.ndarray:
    """The n/2 positive weights a_1 >= a_2 >= ... for the lower half of the sample."""
    nn2 = n // 2
    a = np.zeros(nn2)
    if n == 3:
        a[0] = _SQRTH
        return a

    an25 = n + 0.25
    m = np.array([normal_ppf((i - 0.375) / an25) for i in range(1, nn2 + 1)])
    summ2 = 2.0 * float(np.sum(m * m))
    ssumm2 = math.sqrt(summ2)
    rsn = 1.0 / math.sqrt(n)
    a1 = _poly(_C1, rsn) - m[0] / ssumm2

    if n > 5:
        i1 = 2
        a2 = -m[1] / ssumm2 + _poly(_C2, rsn)
        fac = math.sqrt((summ2 - 2.0 * m[0] ** 2 - 2.0 * m[1] ** 2) / (1.0 - 2.0 * a1 ** 2 - 2.0 * a2 ** 2))
        a[1] = a2
    else:
        i1 = 1
        fac = math.sqrt((summ2 - 2.0 * m[0] ** 2) / (1.0 - 2.0 * a1 ** 2))
    a[0] = a1
    a[i1:] = -m[i1:] / fac
    return a


def _signed_weights(n: int) -> np.ndarray:
    """Antisymmetric weights over the full sorted sample (sum 0, sum of squares 1)."""
    half = swilk_coefficients(n)
    weights = np.zeros(n)
    nn2 = n // 2
    weights[:nn2] = -half
    weights[n - nn2:] = half[::-1]
    return weights


def _p_value(w: float, w1: float, n: int) -> float:
    if n == 3:
        # exact: 6/pi * (asin(sqrt(W)) - asin(sqrt(3/4)))
        pw = 6.0 / math.pi * (math.asin(math.sqrt(min(w, 1.0))) - math.pi / 3.0)
        return min(1.0, max(0.0, pw))

    if w1 <= 0.0:
        return 1.0
    y = math.log(w1)
    if n <= 11:
        gamma = _poly(_G, n)
        if y >= gamma:
            return 1e-99
        y = -math.log(gamma - y)
        m = _poly(_C3, n)
        s = math.exp(_poly(_C4, n))
    else:
        xx = math.log(n)
        m = _poly(_C5, xx)
        s = math.exp(_poly(_C6, xx))
    return min(1.0, max(0.0, normal_sf((y - m) / s)))


def shapiro_wilk(xs: Sequence[float]) -> TestResult:
    x = np.sort(np.asarray(xs, dtype=float))
    n = x.size
    if n < MIN_N or n > MAX_N:
        raise DomainError(f"Shapiro–Wilk needs {MIN_N} <= n <= {MAX_N}, got n = {n}.", {"n": int(n)})
    if not np.all(np.isfinite(x)):
        raise DomainError("Sample contains NaN or infinite values.")

    value_range = x[-1] - x[0]
    if value_range < _SMALL * max(1.0, abs(x[0]), abs(x[-1])):
        raise DegenerateSampleError("All values are identical; Shapiro–Wilk is undefined.", {"n": int(n)})

    # Scale by the range, then take W as the squared correlation between the
    # data and the weights. 1 - W is formed directly to keep precision near 1.
    xs_scaled = x / value_range
    a = _signed_weights(n)
    asa = a - a.mean()
    xsx = xs_scaled - xs_scaled.mean()
    ssa = float(np.dot(asa, asa))
    ssx = float(np.dot(xsx, xsx))
    sax = float(np.dot(asa, xsx))
    ssassx = math.sqrt(ssa * ssx)
    w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx)
    w = 1.0 - w1

    return TestResult(
        statistic=w,
        p_value=_p_value(w, w1, n),
        df=None,
        method_tag="shapiro_wilk",
        n=int(n),
    )
