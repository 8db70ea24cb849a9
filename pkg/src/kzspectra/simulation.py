"""Seeded sinusoid-plus-noise series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from kzspectra.core import SpectralError, TimeSeries
from kzspectra.rng import Xoshiro256PlusPlus

NOISE_KINDS = ("uniform", "normal")


@dataclass(frozen=True)
class SignalSpec:
    frequency: float
    amplitude: float
    phase: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.frequency < 0.5):
            raise SpectralError(f"signal frequency must lie in (0, 0.5), got {self.frequency}")
        if not (self.amplitude > 0):
            raise SpectralError("signal amplitude must be positive")


@dataclass(frozen=True)
class NoiseSpec:
    """Noise of amplitude ``a_n``: uniform on ``[-a_n, a_n]`` or, with
    ``kind="normal"``, Gaussian with standard deviation ``a_n``."""

    amplitude: float
    seed: int = 0
    kind: str = "uniform"

    def __post_init__(self):
        if not (self.amplitude > 0):
            raise SpectralError("noise amplitude must be positive")
        if self.kind not in NOISE_KINDS:
            raise SpectralError(f"noise kind must be one of {NOISE_KINDS}")


def generate_series(n: int, signals: Sequence[SignalSpec], noise: NoiseSpec) -> TimeSeries:
    """``y_t = sum_j a_j sin(2 pi f_j t + phi_j) + u_t`` for ``t = 1..n``."""
    if n < 2:
        raise SpectralError("n must be >= 2")
    rng = Xoshiro256PlusPlus(noise.seed)
    a_n = noise.amplitude
    if noise.kind == "uniform":
        u = [a_n * (2.0 * rng.random() - 1.0) for _ in range(n)]
    else:
        u = [a_n * rng.normal() for _ in range(n)]
    y = np.array(u, dtype=float)
    for s in signals:
        w = 2.0 * math.pi * s.frequency
        y += np.array([s.amplitude * math.sin(w * t + s.phase) for t in range(1, n + 1)])
    return TimeSeries(y)


def snr(signals: Sequence[SignalSpec], noise: NoiseSpec) -> float:
    """Sum of squared signal amplitudes over squared noise amplitude."""
    return sum(s.amplitude**2 for s in signals) / noise.amplitude**2
