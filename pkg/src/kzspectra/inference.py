"""Chi-square machinery and log-scale confidence intervals.

Quantiles follow the lower-tail convention throughout: ``chisq_quantile(p, nu)``
is the ``x`` with ``P(X <= x) = p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


@dataclass(frozen=True)
class ConfidenceSpec:
    alpha: float
    nu: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (self.nu > 0):
            raise ValueError(f"degrees of freedom must be positive, got {self.nu}")


def _gamma_series(a: float, x: float) -> float:
    # P(a, x) by the power series; converges fast for x < a + 1
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cont_frac(a: float, x: float) -> float:
    # Q(a, x) by Lentz's continued fraction; used for x >= a + 1
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def regularized_lower_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma ``P(a, x)``."""
    if a <= 0 or x < 0:
        raise ValueError("need a > 0 and x >= 0")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return min(1.0, _gamma_series(a, x))
    return max(0.0, 1.0 - _gamma_cont_frac(a, x))


def regularized_upper_gamma(a: float, x: float) -> float:
    if a <= 0 or x < 0:
        raise ValueError("need a > 0 and x >= 0")
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return max(0.0, 1.0 - _gamma_series(a, x))
    return min(1.0, _gamma_cont_frac(a, x))


def chisq_cdf(x: float, nu: float) -> float:
    if x < 0 or nu <= 0:
        raise ValueError(f"chisq_cdf needs x >= 0 and nu > 0 (got x={x}, nu={nu})")
    return regularized_lower_gamma(0.5 * nu, 0.5 * x)


def chisq_sf(x: float, nu: float) -> float:
    """Upper tail ``P(X > x)``, accurate where the CDF is close to 1."""
    if x < 0 or nu <= 0:
        raise ValueError(f"chisq_sf needs x >= 0 and nu > 0 (got x={x}, nu={nu})")
    return regularized_upper_gamma(0.5 * nu, 0.5 * x)


def _chisq_logpdf(x: float, nu: float) -> float:
    k = 0.5 * nu
    return (k - 1.0) * math.log(x) - 0.5 * x - k * math.log(2.0) - math.lgamma(k)


def _normal_quantile(p: float) -> float:
    # Acklam's rational approximation, good to ~1e-9; only seeds the Newton solve
    a = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
         1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
    b = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
         6.680131188771972e01, -1.328068155288572e01)
    c = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
         -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
    d = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
         3.754408661907416e00)
    lo = 0.02425
    if p < lo:
        q = math.sqrt(-2 * math.log(p))
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1)
    if p > 1 - lo:
        q = math.sqrt(-2 * math.log(1 - p))
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1)
    q = p - 0.5
    r = q * q
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / \
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1)


def chisq_quantile(p: float, nu: float) -> float:
    """Lower-tail chi-square quantile by safeguarded Newton iteration.

    Starts from the Wilson-Hilferty approximation and falls back to bisection
    whenever a Newton step leaves the current bracket.
    """
    if not (0.0 < p < 1.0):
        raise ValueError(f"probability must lie in (0, 1), got {p}")
    if nu <= 0:
        raise ValueError(f"degrees of freedom must be positive, got {nu}")

    z = _normal_quantile(p)
    h = 2.0 / (9.0 * nu)
    x = nu * (1.0 - h + z * math.sqrt(h)) ** 3
    if not (x > 0) or not math.isfinite(x):
        # small-x tail: P(x) ~ (x/2)^(nu/2) / Gamma(nu/2 + 1)
        x = 2.0 * math.exp((math.log(p) + math.lgamma(0.5 * nu + 1.0)) / (0.5 * nu))

    lo, hi = 0.0, max(2.0 * x, nu + 10.0 * math.sqrt(2.0 * nu) + 10.0)
    while chisq_cdf(hi, nu) < p:
        lo, hi = hi, 2.0 * hi

    for _ in range(500):
        # residual taken on the tail with more relative precision
        if p < 0.5:
            resid = chisq_cdf(x, nu) - p
        else:
            resid = (1.0 - p) - chisq_sf(x, nu)
        if resid > 0:
            hi = x
        else:
            lo = x
        if resid == 0:
            return x
        step = resid / math.exp(_chisq_logpdf(x, nu))
        x_new = x - step
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 1e-14 * x or (hi - lo) <= 1e-15 * hi:
            return x_new
        x = x_new
    return x


def ci_bounds(log_ordinate: float, spec: ConfidenceSpec) -> tuple[float, float]:
    """Log-scale CI ``(lower, upper)`` around a smoothed log ordinate."""
    q_lo = chisq_quantile(spec.alpha / 2.0, spec.nu)
    q_hi = chisq_quantile(1.0 - spec.alpha / 2.0, spec.nu)
    upper = log_ordinate + math.log(spec.nu / q_lo)
    lower = log_ordinate + math.log(spec.nu / q_hi)
    return lower, upper


def ci_offsets(nu: float, alpha: float) -> tuple[float, float]:
    """``(lower - x, upper - x)`` for a log ordinate ``x``."""
    return ci_bounds(0.0, ConfidenceSpec(alpha, nu))


def ci_width(nu: float, alpha: float) -> float:
    ConfidenceSpec(alpha, nu)
    return math.log(chisq_quantile(1.0 - alpha / 2.0, nu) / chisq_quantile(alpha / 2.0, nu))


def _ratio(f1_hat: float, f2_hat: float) -> float:
    if f1_hat <= 0 or f2_hat <= 0:
        raise ValueError("spectral ordinates must be positive")
    return f1_hat / f2_hat


def p_value_greater(f1_hat: float, f2_hat: float, nu: float) -> float:
    """``Pr(chi2(nu) <= nu * f1/f2)``: evidence that ``f2`` exceeds ``f1``."""
    return chisq_cdf(nu * _ratio(f1_hat, f2_hat), nu)


def p_value_less(f1_hat: float, f2_hat: float, nu: float) -> float:
    """``Pr(chi2(nu) >= nu * f1/f2)``: evidence that ``f2`` falls below ``f1``."""
    return chisq_sf(nu * _ratio(f1_hat, f2_hat), nu)
