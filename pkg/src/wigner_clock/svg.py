"""Self-contained SVG line charts of sweep results (no plotting library)."""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .sweep import SweepResult

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")

LABELS = {
    "fidelity": "fidelity |<psi0|psi1>|",
    "entropy": "E(T,S) [bits]",
    "mutual_info": "I(T,S) [bits]",
    "quadratic": "E2(T,S)",
    "renyi": "H_n(T,S) [bits]",
    "log_negativity": "E_N(T,S) [bits]",
    "spin_momentum": "spin-momentum entropy [bits]",
}

WIDTH, HEIGHT = 720, 480
LEFT, RIGHT, TOP, BOTTOM = 80, 170, 40, 60


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round-numbered ticks covering [lo, hi]."""
    if hi <= lo:
        pad = abs(lo) * 0.05 or 0.5
        lo, hi = lo - pad, hi + pad
    raw = (hi - lo) / max(target - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    start = math.floor(lo / step + 1e-9) * step
    ticks = []
    t = start
    while t <= hi + step * 1e-9 or len(ticks) < 2:
        ticks.append(round(t, 12))
        t += step
        if len(ticks) > 50:
            break
    if ticks[-1] < hi:
        ticks.append(round(ticks[-1] + step, 12))
    return ticks


def _tick_label(x: float) -> str:
    return format(x, ".6g")


def _series_label(w_over_m: float, order: float | None, multi_w: bool) -> str:
    if order is None:
        return f"w/m = {w_over_m:g}"
    n = "inf" if math.isinf(order) else f"{order:g}"
    return f"w/m = {w_over_m:g}, n = {n}" if multi_w else f"n = {n}"


def svg_document(result: SweepResult, measure: str) -> str:
    curves = result.curves(measure)
    if not curves:
        raise KeyError(f"measure {measure!r} not present in sweep result")

    xs = np.concatenate([c[0] for c in curves.values()])
    ys = np.concatenate([c[1] for c in curves.values()])
    xticks = nice_ticks(float(xs.min()), float(xs.max()))
    yticks = nice_ticks(float(ys.min()), float(ys.max()))
    x0, x1, y0, y1 = xticks[0], xticks[-1], yticks[0], yticks[-1]
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x0) / (x1 - x0) * pw

    def py(y):
        return TOP + ph - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    for t in xticks:
        x = px(t)
        out.append(f'<line x1="{x:.2f}" y1="{TOP}" x2="{x:.2f}" y2="{TOP + ph}" stroke="#e6e6e6"/>')
        out.append(f'<text x="{x:.2f}" y="{TOP + ph + 18}" text-anchor="middle">{_tick_label(t)}</text>')
    for t in yticks:
        y = py(t)
        out.append(f'<line x1="{LEFT}" y1="{y:.2f}" x2="{LEFT + pw}" y2="{y:.2f}" stroke="#e6e6e6"/>')
        out.append(f'<text x="{LEFT - 8}" y="{y + 4:.2f}" text-anchor="end">{_tick_label(t)}</text>')
    out.append(f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#000000"/>')
    out.append(f'<text x="{LEFT + pw / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle">rapidity xi</text>')
    out.append(f'<text x="20" y="{TOP + ph / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 20 {TOP + ph / 2:.2f})">{escape(LABELS.get(measure, measure))}</text>')

    multi_w = len({k[0] for k in curves}) > 1
    for i, ((wm, order), (cx, cy)) in enumerate(curves.items()):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(cx, cy))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = TOP + 10 + 18 * i
        lx = LEFT + pw + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}">{escape(_series_label(wm, order, multi_w))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(result: SweepResult, measure: str, path: str | Path) -> None:
    """Write one polyline per (w/m, Renyi order) curve of ``measure``."""
    Path(path).write_text(svg_document(result, measure), encoding="utf-8")
