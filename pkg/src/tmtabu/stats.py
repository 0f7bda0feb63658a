"""Descriptive statistics and one-way ANOVA with F-distribution tail values.

The F CDF is evaluated through the regularized incomplete beta function,
itself computed with the modified Lentz continued fraction, so no table or
third-party dependency is needed for arbitrary degrees of freedom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import (
    AlphaRangeError,
    DegenerateDataError,
    DomainError,
    EmptyDataError,
    TooFewGroupsError,
)

_EPS = 1e-15
_TINY = 1e-300
_MAX_ITER = 10_000


def mean_std(samples: Sequence[float]) -> Tuple[float, float]:
    """Arithmetic mean and sample standard deviation (n - 1 divisor).

    A single sample has standard deviation 0.
    """
    xs = list(samples)
    n = len(xs)
    if n == 0:
        raise EmptyDataError("mean_std needs at least one sample")
    mean = math.fsum(xs) / n
    if n == 1:
        return mean, 0.0
    var = math.fsum((x - mean) ** 2 for x in xs) / (n - 1)
    return mean, math.sqrt(var)


def _betacf(a: float, b: float, x: float) -> float:
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise DomainError("betainc needs a > 0 and b > 0")
    if not 0.0 <= x <= 1.0:
        raise DomainError("betainc needs 0 <= x <= 1")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # The fraction converges fast only on this side of the mean; use symmetry otherwise.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _check_df(df1, df2):
    if df1 < 1 or df2 < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got ({df1}, {df2})")


def f_cdf(x: float, df1: int, df2: int) -> float:
    """P[F <= x] for an F(df1, df2) variable."""
    _check_df(df1, df2)
    if x < 0 or math.isnan(x):
        raise DomainError("f_cdf is defined for x >= 0")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    z = df1 * x / (df1 * x + df2)
    return betainc(df1 / 2.0, df2 / 2.0, z)


def f_sf(x: float, df1: int, df2: int) -> float:
    """Upper tail P[F > x], computed directly to keep precision for small p."""
    _check_df(df1, df2)
    if x < 0 or math.isnan(x):
        raise DomainError("f_sf is defined for x >= 0")
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    z = df2 / (df2 + df1 * x)
    return betainc(df2 / 2.0, df1 / 2.0, z)


def f_critical(alpha: float, df1: int, df2: int, tol: float = 1e-8) -> float:
    """The x where f_cdf(x, df1, df2) = 1 - alpha, by bracketing bisection."""
    if not 0.0 < alpha < 1.0:
        raise AlphaRangeError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    _check_df(df1, df2)
    target = 1.0 - alpha
    lo, hi = 0.0, 1.0
    while f_cdf(hi, df1, df2) < target:
        lo, hi = hi, hi * 2.0
        if hi > 1e300:
            raise ArithmeticError("could not bracket the F critical value")
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if f_cdf(mid, df1, df2) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class AnovaResult:
    ss_between: float
    ss_within: float
    df1: int
    df2: int
    f_value: float
    p_value: float
    f_critical: float
    alpha: float

    @property
    def significant(self) -> bool:
        return self.f_value > self.f_critical

    def table(self, label: str = "factor") -> str:
        header = f"{'Parameter':<24}{'SS_b':>12}{'SS_w':>12}{'df1':>6}{'df2':>6}{'F':>10}{'F-crit':>10}{'p':>12}"
        row = (
            f"{label:<24}{self.ss_between:>12.4g}{self.ss_within:>12.6g}{self.df1:>6d}{self.df2:>6d}"
            f"{self.f_value:>10.4f}{self.f_critical:>10.4f}{self.p_value:>12.4g}"
        )
        verdict = (
            f"alpha={self.alpha}: "
            + ("significant (reject H0)" if self.significant else "not significant (cannot reject H0)")
        )
        return "\n".join([header, row, verdict])


def anova_from_stats(ss_between: float, ss_within: float, df1: int, df2: int, alpha: float = 0.05) -> AnovaResult:
    """Complete an ANOVA table from its sums of squares and degrees of freedom."""
    if not 0.0 < alpha < 1.0:
        raise AlphaRangeError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    _check_df(df1, df2)
    if ss_within <= 0:
        if ss_between <= 0:
            raise DegenerateDataError("all samples are identical; F is undefined")
        f_value = math.inf
    else:
        f_value = (ss_between / df1) / (ss_within / df2)
    return AnovaResult(
        ss_between=ss_between,
        ss_within=ss_within,
        df1=df1,
        df2=df2,
        f_value=f_value,
        p_value=f_sf(f_value, df1, df2),
        f_critical=f_critical(alpha, df1, df2),
        alpha=alpha,
    )


def one_way_anova(groups: Sequence[Sequence[float]], alpha: float = 0.05) -> AnovaResult:
    """One-way ANOVA of ``groups`` (each a list of samples) at significance ``alpha``."""
    if not 0.0 < alpha < 1.0:
        raise AlphaRangeError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    groups = [list(g) for g in groups]
    if len(groups) < 2:
        raise TooFewGroupsError(f"ANOVA needs at least 2 groups, got {len(groups)}")
    if any(len(g) == 0 for g in groups):
        raise EmptyDataError("every group needs at least one sample")
    n_total = sum(len(g) for g in groups)
    k = len(groups)
    if n_total <= k:
        raise TooFewGroupsError("need more samples than groups for a within-group estimate")

    grand = math.fsum(x for g in groups for x in g) / n_total
    means = [math.fsum(g) / len(g) for g in groups]
    ss_b = math.fsum(len(g) * (m - grand) ** 2 for g, m in zip(groups, means))
    ss_w = math.fsum((x - m) ** 2 for g, m in zip(groups, means) for x in g)
    return anova_from_stats(ss_b, ss_w, k - 1, n_total - k, alpha)
