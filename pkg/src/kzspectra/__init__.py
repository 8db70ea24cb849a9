"""Kolmogorov-Zurbenko periodograms with dynamic and static smoothing.

The package is organised as a small pipeline:

* :mod:`kzspectra.kzft` builds raw KZ periodograms,
* :mod:`kzspectra.adaptive` applies DZ / NZ dynamic smoothing with chi-square CIs,
* :mod:`kzspectra.static` computes lag-window (static) estimates,
* :mod:`kzspectra.bounds` reports truncation-point bounds and CI-width curves,
* :mod:`kzspectra.protocol` chains detection and strength estimation.
"""

from kzspectra.adaptive import (
    AdaptiveSpec,
    PeakSummary,
    VariationProfile,
    select_halfwidths,
    smooth_with_cis,
    summary_top,
    variation_profile,
)
from kzspectra.bounds import BoundsReport, ci_comparison_curves, resolvable_by_static, truncation_bounds
from kzspectra.core import (
    FrequencyGrid,
    RawPeriodogram,
    SmoothedPeriodogram,
    TimeSeries,
    to_radian,
    validate_series,
)
from kzspectra.inference import (
    ConfidenceSpec,
    chisq_cdf,
    chisq_quantile,
    ci_bounds,
    ci_width,
    p_value_greater,
    p_value_less,
)
from kzspectra.kzft import KzftWeights, kzft_weights, raw_periodogram
from kzspectra.protocol import ProtocolReport, estimate_amplitude, run_two_step
from kzspectra.simulation import NoiseSpec, SignalSpec, generate_series, snr
from kzspectra.static import (
    StaticWindowSpec,
    WindowKind,
    bandwidth,
    equivalent_df,
    equivalent_df_numeric,
    lag_weight,
    static_smoothed_log_periodogram,
)

__all__ = [
    "AdaptiveSpec",
    "BoundsReport",
    "ConfidenceSpec",
    "FrequencyGrid",
    "KzftWeights",
    "NoiseSpec",
    "PeakSummary",
    "ProtocolReport",
    "RawPeriodogram",
    "SignalSpec",
    "SmoothedPeriodogram",
    "StaticWindowSpec",
    "TimeSeries",
    "VariationProfile",
    "WindowKind",
    "bandwidth",
    "chisq_cdf",
    "chisq_quantile",
    "ci_bounds",
    "ci_comparison_curves",
    "ci_width",
    "equivalent_df",
    "equivalent_df_numeric",
    "estimate_amplitude",
    "generate_series",
    "kzft_weights",
    "lag_weight",
    "p_value_greater",
    "p_value_less",
    "raw_periodogram",
    "resolvable_by_static",
    "run_two_step",
    "select_halfwidths",
    "smooth_with_cis",
    "snr",
    "static_smoothed_log_periodogram",
    "summary_top",
    "to_radian",
    "truncation_bounds",
    "validate_series",
    "variation_profile",
]
