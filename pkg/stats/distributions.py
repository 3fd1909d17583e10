"""Special functions for the tests: regularized incomplete beta, Student t, normal."""
from __future__ import annotations

import math
from statistics import NormalDist

from utilities.errors import DomainError

_FPMIN = 1e-300
_MAX_ITER = 500
_EPS = 1e-15

_STANDARD_NORMAL = NormalDist()


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise DomainError(f"Incomplete beta continued fraction did not converge (a={a}, b={b}, x={x}).")


def regularized_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if not (0.0 <= x <= 1.0):
        raise DomainError("x must lie in [0, 1]")
    if a <= 0 or b <= 0:
        raise DomainError("a and b must be positive")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_beta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    front = math.exp(a * math.log(x) + b * math.log1p(-x) - ln_beta)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _check_df(df: float) -> None:
    if not (df > 0) or math.isinf(df):
        raise DomainError(f"Degrees of freedom must be positive and finite, got {df}.")


def student_t_two_sided(t: float, df: float) -> float:
    """P(|T| >= |t|) for T ~ t(df)."""
    _check_df(df)
    if math.isnan(t):
        raise DomainError("t statistic is NaN.")
    if math.isinf(t):
        return 0.0
    p = regularized_beta(df / 2.0, 0.5, df / (df + t * t))
    return min(1.0, max(0.0, p))


def student_t_cdf(t: float, df: float) -> float:
    """P(T <= t) for T ~ t(df); exactly 0.5 at t = 0."""
    _check_df(df)
    if t == 0:
        return 0.5
    tail = 0.5 * student_t_two_sided(t, df)
    return 1.0 - tail if t > 0 else tail


def normal_sf(z: float) -> float:
    """Upper tail P(Z > z); uses the lower tail of -z to keep precision."""
    return _STANDARD_NORMAL.cdf(-z)


def normal_ppf(p: float) -> float:
    if not (0.0 < p < 1.0):
        raise DomainError(f"Normal quantile needs p in (0, 1), got {p}.")
    return _STANDARD_NORMAL.inv_cdf(p)
