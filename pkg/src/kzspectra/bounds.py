"""Truncation-point bounds for static windows and CI-width comparison curves.

Gaps between frequencies are in radians per sample here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional

from kzspectra.core import SpectralError
from kzspectra.inference import ci_width
from kzspectra.static import ALL_KINDS, WINDOW_CONSTANTS, WindowKind, equivalent_df

# dynamic windows cannot go below 3 ordinates, i.e. nu = 6
DYNAMIC_MIN_DF = 6.0


@dataclass(frozen=True)
class BoundsReport:
    kind: WindowKind
    n: int
    delta_lambda: float
    lower_M: float
    upper_M: float
    feasible: bool
    M_min: Optional[int] = None
    M_median: Optional[int] = None
    M_max: Optional[int] = None

    @property
    def has_integer_M(self) -> bool:
        return self.M_min is not None


def min_resolvable_gap(n: int) -> float:
    return 6.0 * math.pi / n


def truncation_bounds(kind, n: int, delta_lambda: float) -> BoundsReport:
    """Admissible truncation points ``lower_M <= M < upper_M``.

    The lower bound keeps the bandwidth within ``delta_lambda``; the upper one
    keeps the equivalent df above the dynamic-window minimum of 6.
    """
    kind = WindowKind.parse(kind)
    if n < 2:
        raise SpectralError("n must be >= 2")
    if not (0.0 < delta_lambda <= math.pi):
        raise SpectralError(f"delta_lambda must lie in (0, pi], got {delta_lambda}")
    c = WINDOW_CONSTANTS[kind]
    lower = c * math.pi / delta_lambda
    upper = c * n / DYNAMIC_MIN_DF
    # lower < upper reduces to delta_lambda > 6 pi / n for every window
    feasible = delta_lambda > min_resolvable_gap(n)
    m_min = m_med = m_max = None
    if feasible:
        lo_int = math.ceil(lower)
        hi_int = math.ceil(upper) - 1
        if lo_int <= hi_int:
            m_min, m_max = lo_int, hi_int
            m_med = (m_min + m_max) // 2
    return BoundsReport(kind, int(n), float(delta_lambda), lower, upper, feasible, m_min, m_med, m_max)


def resolvable_by_static(n: int, lambda_i: float, lambda_ip1: float) -> bool:
    for lam in (lambda_i, lambda_ip1):
        if not (0.0 <= lam <= math.pi):
            raise SpectralError(f"radian frequency {lam} outside [0, pi]")
    return abs(lambda_ip1 - lambda_i) > min_resolvable_gap(n)


@dataclass(frozen=True)
class CurveRow:
    series: str  # "dynamic" or a window label
    level: str  # "w=<width>" for dynamic rows; "max" / "median" / "min" for static
    window: int  # dynamic window width or static truncation point
    dof: float
    width: float


def ci_comparison_curves(n: int, pos: float, alpha: float = 0.05) -> List[CurveRow]:
    """Rows for the dynamic-vs-static CI width comparison figures."""
    w_max = math.floor(pos * n + 1e-9)
    if w_max < 3:
        raise SpectralError(f"pos * n = {pos * n:g} leaves no window of width 3")
    rows = [CurveRow("dynamic", f"w={w}", w, 2.0 * w, ci_width(2.0 * w, alpha)) for w in range(3, w_max + 1, 2)]
    for kind in ALL_KINDS:
        rep = truncation_bounds(kind, n, math.pi)
        for level, M in (("max", rep.M_max), ("median", rep.M_median), ("min", rep.M_min)):
            nu = equivalent_df(kind, n, M)
            rows.append(CurveRow(kind.label, level, M, nu, ci_width(nu, alpha)))
    return rows


def static_widths(rows: List[CurveRow]) -> Dict[str, Dict[str, float]]:
    out: Dict[str, Dict[str, float]] = {}
    for r in rows:
        if r.series != "dynamic":
            out.setdefault(r.series, {})[r.level] = r.width
    return out
