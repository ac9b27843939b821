"""Minimal SVG line/scatter figures with fully deterministic output.

Keeps plot emission free of environment-sensitive metadata (timestamps,
library versions, hash salts) so repeated runs are byte-identical: the
file starts with a fixed header and contains nothing but geometry derived
from the data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Series", "render_figure"]

HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n<!-- cpfit figure -->\n'

WIDTH, HEIGHT = 720.0, 480.0
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64.0, 16.0, 36.0, 48.0

COLORS = ("#1f6fb2", "#c4442a", "#3a8f3a", "#7a4fa3", "#a07f28")


@dataclass(frozen=True)
class Series:
    """One curve or point set; draws markers when ``markers`` is set."""

    x: np.ndarray
    y: np.ndarray
    label: str = ""
    markers: bool = False
    dash: str = ""          # SVG dash pattern, e.g. "6,3"; solid if empty

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 1 or x.size == 0:
            raise ValueError("series x and y must be matching 1-d arrays")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _ticks(lo: float, hi: float, n: int = 5) -> np.ndarray:
    if hi <= lo:
        hi = lo + 1.0
    return np.linspace(lo, hi, n)


def render_figure(series: list[Series], title: str = "",
                  xlabel: str = "", ylabel: str = "") -> str:
    """SVG text for a set of series on shared linear axes."""
    if not series:
        raise ValueError("at least one series is required")
    x_lo = min(float(s.x.min()) for s in series)
    x_hi = max(float(s.x.max()) for s in series)
    y_lo = min(float(s.y.min()) for s in series)
    y_hi = max(float(s.y.max()) for s in series)
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    pad = 0.04 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(v):
        return MARGIN_L + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v):
        return MARGIN_T + (y_hi - v) / (y_hi - y_lo) * plot_h

    parts = [HEADER]
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(WIDTH)}" '
        f'height="{_fmt(HEIGHT)}" viewBox="0 0 {_fmt(WIDTH)} {_fmt(HEIGHT)}">\n')
    parts.append(f'<rect width="{_fmt(WIDTH)}" height="{_fmt(HEIGHT)}" '
                 f'fill="white"/>\n')
    if title:
        parts.append(
            f'<text x="{_fmt(WIDTH / 2)}" y="22" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>\n')

    # frame and ticks
    x0, y0 = MARGIN_L, MARGIN_T + plot_h
    parts.append(
        f'<rect x="{_fmt(MARGIN_L)}" y="{_fmt(MARGIN_T)}" '
        f'width="{_fmt(plot_w)}" height="{_fmt(plot_h)}" fill="none" '
        f'stroke="#444444" stroke-width="1"/>\n')
    for tick in _ticks(x_lo, x_hi):
        px = sx(tick)
        parts.append(f'<line x1="{_fmt(px)}" y1="{_fmt(y0)}" x2="{_fmt(px)}" '
                     f'y2="{_fmt(y0 + 5)}" stroke="#444444"/>\n')
        parts.append(f'<text x="{_fmt(px)}" y="{_fmt(y0 + 20)}" '
                     f'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="11">{_fmt(tick)}</text>\n')
    for tick in _ticks(y_lo, y_hi):
        py = sy(tick)
        parts.append(f'<line x1="{_fmt(x0 - 5)}" y1="{_fmt(py)}" '
                     f'x2="{_fmt(x0)}" y2="{_fmt(py)}" stroke="#444444"/>\n')
        parts.append(f'<text x="{_fmt(x0 - 8)}" y="{_fmt(py + 4)}" '
                     f'text-anchor="end" font-family="sans-serif" '
                     f'font-size="11">{_fmt(tick)}</text>\n')
    if xlabel:
        parts.append(
            f'<text x="{_fmt(MARGIN_L + plot_w / 2)}" '
            f'y="{_fmt(HEIGHT - 10)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{xlabel}</text>\n')
    if ylabel:
        cx, cy = 16.0, MARGIN_T + plot_h / 2
        parts.append(
            f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13" '
            f'transform="rotate(-90 {_fmt(cx)} {_fmt(cy)})">{ylabel}</text>\n')

    for i, s in enumerate(series):
        color = COLORS[i % len(COLORS)]
        if s.markers:
            for xv, yv in zip(s.x, s.y):
                parts.append(f'<circle cx="{_fmt(sx(xv))}" '
                             f'cy="{_fmt(sy(yv))}" r="2.6" fill="{color}"/>\n')
        else:
            coords = " ".join(
                f"{_fmt(sx(xv))},{_fmt(sy(yv))}" for xv, yv in zip(s.x, s.y))
            dash = f' stroke-dasharray="{s.dash}"' if s.dash else ""
            parts.append(f'<polyline points="{coords}" fill="none" '
                         f'stroke="{color}" stroke-width="1.4"{dash}/>\n')
        if s.label:
            ly = MARGIN_T + 16 + 16 * i
            lx = MARGIN_L + plot_w - 10
            parts.append(f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" '
                         f'text-anchor="end" font-family="sans-serif" '
                         f'font-size="12" fill="{color}">{s.label}</text>\n')

    parts.append("</svg>\n")
    return "".join(parts)
