"""Lag-window (static) spectral smoothing.

Window shapes are the textbook ones; the rounded df and bandwidth constants
(1, 2.5, 2.67, 3, 3.7) are attached per kind and are what the rest of the
package uses. :func:`equivalent_df_numeric` recomputes df from the window
shape as a cross-check.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from kzspectra.core import FrequencyGrid, SmoothedPeriodogram, SpectralError, TimeSeries
from kzspectra.inference import ci_offsets

LOG_FLOOR = 1e-300


class WindowKind(enum.Enum):
    RECTANGULAR = "rectangular"
    TUKEY_HAMMING = "hamming"
    TUKEY_HANNING = "hanning"
    BARTLETT = "bartlett"
    PARZEN = "parzen"

    @classmethod
    def parse(cls, value) -> "WindowKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        aliases = {
            "rectangular": cls.RECTANGULAR, "rect": cls.RECTANGULAR,
            "hamming": cls.TUKEY_HAMMING, "tukeyhamming": cls.TUKEY_HAMMING,
            "hanning": cls.TUKEY_HANNING, "hann": cls.TUKEY_HANNING, "tukeyhanning": cls.TUKEY_HANNING,
            "bartlett": cls.BARTLETT,
            "parzen": cls.PARZEN,
        }
        try:
            return aliases[key]
        except KeyError:
            raise SpectralError(f"unknown window kind {value!r}") from None

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    WindowKind.RECTANGULAR: "Rectangular",
    WindowKind.TUKEY_HAMMING: "TukeyHamming",
    WindowKind.TUKEY_HANNING: "TukeyHanning",
    WindowKind.BARTLETT: "Bartlett",
    WindowKind.PARZEN: "Parzen",
}

# df = c * n / M and bandwidth = c * pi / M share the same constant per window
WINDOW_CONSTANTS = {
    WindowKind.RECTANGULAR: 1.0,
    WindowKind.TUKEY_HAMMING: 2.5,
    WindowKind.TUKEY_HANNING: 2.67,
    WindowKind.BARTLETT: 3.0,
    WindowKind.PARZEN: 3.7,
}

ALL_KINDS = tuple(WindowKind)


@dataclass(frozen=True)
class StaticWindowSpec:
    kind: WindowKind
    M: int

    def __post_init__(self):
        object.__setattr__(self, "kind", WindowKind.parse(self.kind))
        if int(self.M) != self.M or self.M < 1:
            raise SpectralError(f"truncation point must be a positive integer, got {self.M}")
        object.__setattr__(self, "M", int(self.M))

    @property
    def df_constant(self) -> float:
        return WINDOW_CONSTANTS[self.kind]

    @property
    def bandwidth_constant(self) -> float:
        return WINDOW_CONSTANTS[self.kind]

    def weight(self, x):
        return lag_weight(self.kind, x)


def lag_weight(kind, x):
    """Lag weight ``W(x)`` on ``[-1, 1]``; accepts scalars or arrays."""
    kind = WindowKind.parse(kind)
    xa = np.abs(np.asarray(x, dtype=float))
    if np.any(xa > 1.0):
        raise SpectralError("lag weight argument outside [-1, 1]")
    if kind is WindowKind.RECTANGULAR:
        w = np.ones_like(xa)
    elif kind is WindowKind.BARTLETT:
        w = 1.0 - xa
    elif kind is WindowKind.TUKEY_HANNING:
        w = 0.5 * (1.0 + np.cos(np.pi * xa))
    elif kind is WindowKind.TUKEY_HAMMING:
        w = 0.54 + 0.46 * np.cos(np.pi * xa)
    else:
        w = np.where(xa <= 0.5, 1.0 - 6.0 * xa**2 + 6.0 * xa**3, 2.0 * (1.0 - xa) ** 3)
    if np.ndim(x) == 0:
        return float(w)
    return w


def _check_nm(n: int, M: int):
    if M < 1 or M >= n:
        raise SpectralError(f"truncation point must satisfy 1 <= M < n (M={M}, n={n})")


def equivalent_df(kind, n: int, M: int) -> float:
    _check_nm(n, M)
    return WINDOW_CONSTANTS[WindowKind.parse(kind)] * n / M


def window_energy(kind) -> float:
    """``integral_{-1}^{1} W(x)^2 dx`` by adaptive quadrature."""
    kind = WindowKind.parse(kind)
    f = lambda x: lag_weight(kind, x) ** 2  # noqa: E731
    points = [-0.5, 0.0, 0.5] if kind is WindowKind.PARZEN else [0.0]
    val, err = integrate.quad(f, -1.0, 1.0, points=points, epsabs=1e-12, epsrel=1e-12)
    assert err <= 1e-8
    return val


def equivalent_df_numeric(kind, n: int, M: int) -> float:
    _check_nm(n, M)
    return 2.0 * n / (M * window_energy(kind))


def bandwidth(kind, M: int) -> float:
    """Bandwidth in radians per sample."""
    if M < 1:
        raise SpectralError("truncation point must be >= 1")
    return WINDOW_CONSTANTS[WindowKind.parse(kind)] * math.pi / M


def autocovariance(values: np.ndarray, max_lag: int) -> np.ndarray:
    """Biased (divisor n) sample autocovariances for lags ``0..max_lag``."""
    x = np.asarray(values, dtype=float)
    x = x - x.mean()
    n = x.size
    nfft = 1 << int(math.ceil(math.log2(2 * n)))
    spec = np.fft.rfft(x, nfft)
    acov = np.fft.irfft(spec.real**2 + spec.imag**2, nfft)[: max_lag + 1]
    return acov / n


def lag_window_estimate(y: TimeSeries, spec: StaticWindowSpec, frequencies) -> np.ndarray:
    """``c(0) + 2 sum_h W(h/M) c(h) cos(2 pi f h)``, raw (unfloored) scale."""
    vals = y.values if isinstance(y, TimeSeries) else np.asarray(y, dtype=float)
    c = autocovariance(vals, spec.M)
    h = np.arange(1, spec.M + 1)
    wc = lag_weight(spec.kind, h / spec.M) * c[1:]
    f = np.asarray(frequencies, dtype=float)
    return c[0] + 2.0 * (np.cos(2.0 * np.pi * np.outer(f, h)) @ wc)


def lag_window_gain(spec: StaticWindowSpec, n: int) -> float:
    """Peak response of the lag-window estimator to a unit-power line.

    A sinusoid of amplitude ``a`` at a frequency away from 0 and 0.5 produces a
    lag-window ordinate close to ``gain * a^2 / 4``; the factor ``1 - h/n``
    accounts for the divisor-n autocovariance.
    """
    h = np.arange(-spec.M, spec.M + 1)
    return float(np.sum(lag_weight(spec.kind, h / spec.M) * (1.0 - np.abs(h) / n)))


def static_smoothed_log_periodogram(
    y: TimeSeries, spec: StaticWindowSpec, grid: FrequencyGrid, alpha: float = 0.05
) -> SmoothedPeriodogram:
    if not isinstance(y, TimeSeries):
        y = TimeSeries(y)
    if len(grid) == 0:
        raise SpectralError("empty frequency grid")
    n = len(y)
    nu = equivalent_df(spec.kind, n, spec.M)
    est = lag_window_estimate(y, spec, grid.frequencies)
    flags = ~(est > LOG_FLOOR)
    if flags.any():
        warnings.warn(
            f"{int(flags.sum())} nonpositive lag-window estimates floored at {LOG_FLOOR:g}",
            RuntimeWarning,
            stacklevel=2,
        )
    logs = np.log(np.where(flags, LOG_FLOOR, est))
    lo_off, hi_off = ci_offsets(nu, alpha)
    size = len(grid)
    half = max(1, math.ceil(nu / 2.0))
    return SmoothedPeriodogram(
        grid=grid,
        ordinates=logs,
        log_scale=True,
        half_widths=np.full(size, half),
        realized_lengths=np.full(size, half),
        ci_lower=logs + lo_off,
        ci_upper=logs + hi_off,
        alpha=alpha,
        method=f"STATIC({spec.kind.label}, {spec.M})",
        dof=np.full(size, nu),
        floor_flags=flags,
    )
