"""Matplotlib figures of sweep results, written next to the CSV."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .svg import LABELS  # noqa: E402
from .sweep import SweepResult  # noqa: E402

COMPARISON = "comparison"

# pdf/svg otherwise embed a creation date
_METADATA = {".pdf": {"CreationDate": None}, ".svg": {"Date": None}, ".png": {"Software": None}}


def _label(w_over_m, order, multi_w):
    if order is None:
        return f"$w/m = {w_over_m:g}$"
    n = r"\infty" if math.isinf(order) else f"{order:g}"
    return f"$w/m = {w_over_m:g},\\ n = {n}$" if multi_w else f"$n = {n}$"


def plot_measure(result: SweepResult, measure: str, ax=None):
    curves = result.curves(measure)
    if not curves:
        raise KeyError(f"measure {measure!r} not present in sweep result")
    if ax is None:
        _, ax = plt.subplots(figsize=(6, 4))
    multi_w = len({k[0] for k in curves}) > 1
    for (wm, order), (x, y) in curves.items():
        ax.plot(x, y, label=_label(wm, order, multi_w))
    ax.set_xlabel(r"rapidity $\xi$")
    ax.set_ylabel(LABELS.get(measure, measure))
    ax.legend(frameon=False)
    return ax


def plot_comparison(result: SweepResult, w_over_m: float = 1.0, ax=None):
    """Time-system entropy against spin-momentum entropy at one w/m."""
    if ax is None:
        _, ax = plt.subplots(figsize=(6, 4))
    found = False
    for measure, label in (("entropy", "time-system"), ("spin_momentum", "spin-momentum")):
        for (wm, _), (x, y) in result.curves(measure).items():
            if math.isclose(wm, w_over_m):
                ax.plot(x, y, label=label)
                found = True
    if not found:
        raise KeyError(f"no entropy or spin_momentum rows at w/m={w_over_m:g}")
    ax.set_xlabel(r"rapidity $\xi$")
    ax.set_ylabel("entanglement entropy [bits]")
    ax.set_title(f"$w/m = {w_over_m:g}$")
    ax.legend(frameon=False)
    return ax


def save_figure(result: SweepResult, measure: str, path: str | Path, w_over_m: float = 1.0) -> None:
    """Render ``measure`` (or ``"comparison"``) to an image file."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    try:
        if measure == COMPARISON:
            plot_comparison(result, w_over_m, ax=ax)
        else:
            plot_measure(result, measure, ax=ax)
        fig.tight_layout()
        fig.savefig(path, metadata=_METADATA.get(path.suffix.lower()))
    finally:
        plt.close(fig)
