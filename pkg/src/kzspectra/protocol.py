"""Two-step analysis: dynamic smoothing to find peaks, static smoothing to size them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from kzspectra.adaptive import AdaptiveSpec, smooth_with_cis, summary_top
from kzspectra.bounds import BoundsReport, resolvable_by_static, truncation_bounds
from kzspectra.core import SmoothedPeriodogram, SpectralError, TimeSeries, to_radian
from kzspectra.kzft import C_NORM, raw_periodogram
from kzspectra.static import (
    ALL_KINDS,
    StaticWindowSpec,
    WindowKind,
    lag_window_gain,
    static_smoothed_log_periodogram,
)

# ordinate of a unit-amplitude grid-frequency sinusoid is C_AMP / 4
C_AMP = C_NORM


def estimate_amplitude(raw_scale_ordinate: float) -> float:
    if raw_scale_ordinate < 0:
        raise SpectralError("ordinate must be nonnegative")
    return 2.0 * math.sqrt(raw_scale_ordinate / C_AMP)


@dataclass(frozen=True)
class DetectedPeak:
    frequency: float
    ordinate: float
    ci_lower: float
    ci_upper: float


@dataclass(frozen=True)
class Strength:
    frequency: float
    amplitude: float
    log_ordinate: float
    log_ci: Tuple[float, float]
    amplitude_ci: Tuple[float, float]

    @property
    def log_ci_width(self) -> float:
        return self.log_ci[1] - self.log_ci[0]


@dataclass(frozen=True)
class ProtocolReport:
    detected: List[DetectedPeak]
    min_gap: float
    bounds: Dict[WindowKind, BoundsReport]
    chosen: Optional[Tuple[WindowKind, int]]
    strengths: List[Strength]
    fallback_used: bool
    dynamic: SmoothedPeriodogram = field(repr=False)
    static: Optional[SmoothedPeriodogram] = field(default=None, repr=False)


def strengths_from(sp: SmoothedPeriodogram, frequencies, gain: float = 1.0) -> List[Strength]:
    """Amplitude estimates and CIs read off a smoothed periodogram.

    ``gain`` converts the periodogram's raw scale to KZ-ordinate scale.
    """
    out = []
    for f in frequencies:
        i = sp.grid.nearest_index(f)
        s = float(sp.ordinates[i])
        raw = math.exp(s) if sp.log_scale else s
        lo, hi = float(sp.ci_lower[i]), float(sp.ci_upper[i])
        amp = estimate_amplitude(max(raw, 0.0) / gain)
        amp_lo = estimate_amplitude(max(raw, 0.0) * math.exp(lo - s) / gain)
        amp_hi = estimate_amplitude(max(raw, 0.0) * math.exp(hi - s) / gain)
        log_s = s if sp.log_scale else math.log(max(raw, 1e-300))
        out.append(Strength(float(sp.frequencies[i]), amp, log_s, (lo, hi), (amp_lo, amp_hi)))
    return out


def _min_gap(freqs: List[float]) -> Tuple[float, Optional[Tuple[float, float]]]:
    if len(freqs) < 2:
        return math.pi, None
    rad = sorted(to_radian(f) for f in freqs)
    gaps = np.diff(rad)
    i = int(np.argmin(gaps))
    return float(gaps[i]), (rad[i], rad[i + 1])


def run_two_step(
    y: TimeSeries,
    adaptive: Optional[AdaptiveSpec] = None,
    m: int = 500,
    k: int = 1,
    preferred_kind="parzen",
    alpha: float = 0.05,
    top: int = 2,
) -> ProtocolReport:
    """Detect with DZ/NZ, then re-estimate strengths with a static window.

    The truncation point defaults to the median of the admissible range. When
    the closest detected pair is within ``6 pi / n`` the dynamic estimates are
    kept instead.
    """
    if not isinstance(y, TimeSeries):
        y = TimeSeries(y)
    adaptive = adaptive or AdaptiveSpec(alpha=alpha)
    kind = WindowKind.parse(preferred_kind)
    n = len(y)

    raw = raw_periodogram(y, m, k)
    dyn = smooth_with_cis(raw, adaptive)
    peaks = summary_top(dyn, top=top)
    detected = [DetectedPeak(p.frequency, p.ordinate, p.ci_lower, p.ci_upper) for p in peaks]
    freqs = [p.frequency for p in peaks]

    min_gap, pair = _min_gap(freqs)
    resolvable = pair is None or resolvable_by_static(n, *pair)
    bounds = {kd: truncation_bounds(kd, n, min_gap) for kd in ALL_KINDS} if resolvable else {}
    chosen_report = bounds.get(kind)

    if not resolvable or chosen_report is None or not chosen_report.has_integer_M:
        return ProtocolReport(
            detected=detected,
            min_gap=min_gap,
            bounds=bounds,
            chosen=None,
            strengths=strengths_from(dyn, freqs),
            fallback_used=True,
            dynamic=dyn,
        )

    spec = StaticWindowSpec(kind, chosen_report.M_median)
    stat = static_smoothed_log_periodogram(y, spec, raw.grid, alpha)
    gain = lag_window_gain(spec, n)
    return ProtocolReport(
        detected=detected,
        min_gap=min_gap,
        bounds=bounds,
        chosen=(kind, spec.M),
        strengths=strengths_from(stat, freqs, gain),
        fallback_used=False,
        dynamic=dyn,
        static=stat,
    )
