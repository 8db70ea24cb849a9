"""Mean-centred periodogram plots written as SVG."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from kzspectra.core import SmoothedPeriodogram


@dataclass(frozen=True)
class PlotDocument:
    frequency: np.ndarray
    center: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    shift: float
    ylim: Tuple[float, float]
    xlabel: str = "Frequency"
    ylabel: str = ""
    title: str = ""


def plot_document(sp: SmoothedPeriodogram, title: str = "") -> PlotDocument:
    """All three curves shifted by the mean smoothed ordinate."""
    shift = float(np.mean(sp.ordinates))
    center = sp.ordinates - shift
    upper = sp.ci_upper - shift
    lower = sp.ci_lower - shift
    ylim = (float(lower.min()) - 1.0, float(upper.max()) + 1.0)
    return PlotDocument(np.asarray(sp.frequencies), center, upper, lower, shift, ylim, title=title)


def _figure():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_plot(sp: SmoothedPeriodogram, path, title: str = "") -> PlotDocument:
    doc = plot_document(sp, title)
    plt = _figure()
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(doc.frequency, doc.center, color="black", linewidth=1.0)
    ax.plot(doc.frequency, doc.upper, color="blue", linewidth=0.8)
    ax.plot(doc.frequency, doc.lower, color="red", linewidth=0.8)
    ax.set_ylim(*doc.ylim)
    ax.set_xlabel(doc.xlabel)
    ax.set_ylabel(doc.ylabel)
    if title:
        ax.set_title(title)
    try:
        fig.savefig(path, format="svg")
    finally:
        plt.close(fig)
    return doc


def render_ci_comparison(rows: Sequence, path, title: str = "") -> None:
    """Dynamic CI width against window width, static widths as horizontal lines."""
    plt = _figure()
    fig, ax = plt.subplots(figsize=(8, 5))
    dyn = [r for r in rows if r.series == "dynamic"]
    ax.plot([r.window for r in dyn], [r.width for r in dyn], color="black", label="dynamic (DZ/NZ)")
    styles = {"max": "-", "median": "--", "min": ":"}
    colors = ["tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple"]
    labels = sorted({r.series for r in rows if r.series != "dynamic"})
    for color, label in zip(colors, labels):
        for r in rows:
            if r.series == label:
                ax.axhline(r.width, color=color, linestyle=styles[r.level], linewidth=0.8,
                           label=f"{label} M={r.window} ({r.level})")
    ax.set_xlabel("Dynamic smoothing window width")
    ax.set_ylabel("CI width (log scale)")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=6, ncol=2)
    try:
        fig.savefig(path, format="svg")
    finally:
        plt.close(fig)
