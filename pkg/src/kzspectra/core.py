"""Shared domain types and unit conversions.

All user-facing frequencies are in cycles per sample, ``[0, 0.5]``. Radian
frequencies only show up in the truncation-point bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

GRID_TOLERANCE = 1e-12


class SpectralError(ValueError):
    """Raised when an input violates a domain invariant."""


def _frozen(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def to_radian(f: float) -> float:
    """Convert a cycles-per-sample frequency to radians per sample."""
    if not (0.0 <= f <= 0.5):
        raise SpectralError(f"frequency {f!r} outside [0, 0.5] cycles per sample")
    return 2.0 * math.pi * f


def validate_series(values: Sequence[float], sample_interval: float = 1.0) -> "TimeSeries":
    return TimeSeries(values, sample_interval)


@dataclass(frozen=True, init=False)
class TimeSeries:
    values: np.ndarray
    sample_interval: float = 1.0

    def __init__(self, values: Sequence[float], sample_interval: float = 1.0):
        arr = np.asarray(values, dtype=float).ravel()
        if arr.size < 2:
            raise SpectralError("series length < 2")
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise SpectralError(f"non-finite value at index {int(bad[0])}")
        if not (sample_interval > 0 and math.isfinite(sample_interval)):
            raise SpectralError("sample_interval must be positive")
        object.__setattr__(self, "values", _frozen(arr))
        object.__setattr__(self, "sample_interval", float(sample_interval))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True, init=False)
class FrequencyGrid:
    """Uniform, ascending grid of frequencies starting at zero."""

    frequencies: np.ndarray
    spacing: float

    def __init__(self, frequencies: Sequence[float], spacing: Optional[float] = None):
        f = np.asarray(frequencies, dtype=float).ravel()
        if f.size == 0:
            raise SpectralError("empty frequency grid")
        if f[0] != 0.0:
            raise SpectralError("frequency grid must start at 0")
        if f[-1] > 0.5 + GRID_TOLERANCE:
            raise SpectralError("frequency grid exceeds Nyquist (0.5)")
        if f.size > 1:
            d = np.diff(f)
            if np.any(d <= 0):
                raise SpectralError("frequency grid must be strictly ascending")
            if spacing is None:
                spacing = float(d[0])
            if np.max(np.abs(d - spacing)) > GRID_TOLERANCE:
                raise SpectralError("frequency grid is not uniformly spaced")
        elif spacing is None:
            raise SpectralError("spacing required for a single-point grid")
        if spacing <= 0:
            raise SpectralError("grid spacing must be positive")
        object.__setattr__(self, "frequencies", _frozen(f))
        object.__setattr__(self, "spacing", float(spacing))

    @classmethod
    def for_window(cls, m: int) -> "FrequencyGrid":
        """The KZ grid ``j/m`` for ``j = 0..floor(m/2)``."""
        return cls(np.arange(m // 2 + 1) / m, 1.0 / m)

    def __len__(self) -> int:
        return int(self.frequencies.size)

    def nearest_index(self, f: float) -> int:
        return int(np.argmin(np.abs(self.frequencies - f)))


@dataclass(frozen=True)
class RawPeriodogram:
    grid: FrequencyGrid
    ordinates: np.ndarray
    m: int
    k: int

    def __post_init__(self):
        ords = np.asarray(self.ordinates, dtype=float)
        if ords.shape != (len(self.grid),):
            raise SpectralError("ordinate count does not match grid length")
        if not np.all(np.isfinite(ords)) or np.any(ords < 0):
            raise SpectralError("raw ordinates must be finite and nonnegative")
        object.__setattr__(self, "ordinates", _frozen(ords))

    @property
    def frequencies(self) -> np.ndarray:
        return self.grid.frequencies


@dataclass(frozen=True)
class SmoothedPeriodogram:
    """Per-frequency smoothed ordinates with confidence bounds.

    ``method`` is ``"DZ"``, ``"NZ"`` or ``"STATIC(<kind>, <M>)"``. ``dof``
    holds the degrees of freedom used for each CI, and ``floor_flags`` marks
    ordinates that had to be floored before taking the log.
    """

    grid: FrequencyGrid
    ordinates: np.ndarray
    log_scale: bool
    half_widths: np.ndarray
    realized_lengths: np.ndarray
    ci_lower: np.ndarray
    ci_upper: np.ndarray
    alpha: float
    method: str
    dof: np.ndarray = field(default=None)
    floor_flags: np.ndarray = field(default=None)

    def __post_init__(self):
        n = len(self.grid)
        for name in ("ordinates", "ci_lower", "ci_upper", "dof"):
            val = getattr(self, name)
            if val is None:
                val = np.full(n, np.nan)
            object.__setattr__(self, name, _frozen(val))
        for name in ("half_widths", "realized_lengths"):
            object.__setattr__(self, name, _frozen(getattr(self, name), dtype=np.int64))
        flags = self.floor_flags if self.floor_flags is not None else np.zeros(n, bool)
        object.__setattr__(self, "floor_flags", _frozen(flags, dtype=bool))
        for name in ("ordinates", "half_widths", "realized_lengths", "ci_lower", "ci_upper", "dof", "floor_flags"):
            if getattr(self, name).shape != (n,):
                raise SpectralError(f"{name} length does not match grid")
        if not (0.0 < self.alpha < 1.0):
            raise SpectralError("alpha must lie in (0, 1)")
        if np.any(self.half_widths < 1):
            raise SpectralError("half widths must be >= 1")
        if not (np.all(self.ci_lower <= self.ordinates) and np.all(self.ordinates <= self.ci_upper)):
            raise SpectralError("confidence bounds do not bracket the ordinates")

    @property
    def frequencies(self) -> np.ndarray:
        return self.grid.frequencies

    @property
    def ci_widths(self) -> np.ndarray:
        return self.ci_upper - self.ci_lower

    @property
    def floor_count(self) -> int:
        return int(self.floor_flags.sum())
