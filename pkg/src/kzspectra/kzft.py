"""Raw Kolmogorov-Zurbenko periodogram.

Each ordinate is the squared modulus of a KZ Fourier transform coefficient,
averaged over non-overlapping windows of length ``L = k(m-1) + 1``. The
weights are the ``k``-fold self-convolution of the uniform length-``m``
moving average.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from kzspectra.core import FrequencyGrid, RawPeriodogram, SpectralError, TimeSeries

# With unit-sum weights a grid-frequency sinusoid of amplitude a gives
# |coefficient|^2 = a^2 / 4, so no extra scaling is needed; amplitude
# recovery (protocol.estimate_amplitude) relies on this value.
C_NORM = 1.0


@dataclass(frozen=True)
class KzftWeights:
    weights: np.ndarray
    m: int
    k: int

    def __len__(self) -> int:
        return int(self.weights.size)


def kzft_weights(m: int, k: int) -> KzftWeights:
    if int(m) != m or m < 2:
        raise SpectralError(f"window width m must be an integer >= 2, got {m}")
    if int(k) != k or k < 1:
        raise SpectralError(f"iteration count k must be an integer >= 1, got {k}")
    m, k = int(m), int(k)
    base = np.full(m, 1.0 / m)
    w = base
    for _ in range(k - 1):
        w = np.convolve(w, base)
    w = 0.5 * (w + w[::-1])
    w.setflags(write=False)
    return KzftWeights(w, m, k)


def raw_periodogram(y: TimeSeries, m: int, k: int = 1) -> RawPeriodogram:
    """KZ periodogram on the grid ``j/m``, ``j = 0..floor(m/2)``.

    Trailing samples that do not fill a whole window are dropped.
    """
    if not isinstance(y, TimeSeries):
        y = TimeSeries(y)
    w = kzft_weights(m, k)
    L = len(w)
    n = len(y)
    if n < L:
        raise SpectralError(f"series length {n} shorter than KZFT window {L}")
    n_win = n // L
    segments = y.values[: n_win * L].reshape(n_win, L)

    grid = FrequencyGrid.for_window(w.m)
    s = np.arange(L)
    # |sum_s w_s y_{t+s} e^{-2 pi i f (t+s)}| does not depend on the e^{-2 pi i f t} factor
    phase = np.exp(-2j * np.pi * np.outer(s, grid.frequencies))
    coef = (segments * w.weights) @ phase
    power = coef.real**2 + coef.imag**2
    ordinates = C_NORM * power.mean(axis=0)
    return RawPeriodogram(grid, ordinates, w.m, w.k)
