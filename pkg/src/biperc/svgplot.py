"""Minimal deterministic SVG output: one line plot and one raster plot.

Hand-rolled on purpose: the files are self-contained (inline axis labels,
no fonts or external assets) and byte-identical for identical inputs.
"""

from __future__ import annotations

from typing import Sequence

WIDTH, HEIGHT = 640, 440
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 30, 55

_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'

CELL_COLORS = {"KDD": "#d95f02", "KDN": "#7570b3", "TIE": "#cccccc"}


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _axes(x_lo, x_hi, y_lo, y_hi, x_label, y_label, title) -> list[str]:
    px0, px1 = MARGIN_L, WIDTH - MARGIN_R
    py0, py1 = HEIGHT - MARGIN_B, MARGIN_T
    parts = [
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{px0}" y1="{py0}" x2="{px1}" y2="{py0}" stroke="black"/>',
        f'<line x1="{px0}" y1="{py0}" x2="{px0}" y2="{py1}" stroke="black"/>',
        f'<text x="{(px0 + px1) / 2:.0f}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-size="14">{x_label}</text>',
        f'<text x="16" y="{(py0 + py1) / 2:.0f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 16 {(py0 + py1) / 2:.0f})">{y_label}</text>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.0f}" y="20" text-anchor="middle" font-size="15">{title}</text>'
        )
    for tx in _ticks(x_lo, x_hi):
        px = px0 + (px1 - px0) * ((tx - x_lo) / (x_hi - x_lo) if x_hi > x_lo else 0.5)
        parts.append(f'<line x1="{_fmt(px)}" y1="{py0}" x2="{_fmt(px)}" y2="{py0 + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{_fmt(px)}" y="{py0 + 20}" text-anchor="middle" font-size="11">{tx:.4g}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        py = py0 - (py0 - py1) * ((ty - y_lo) / (y_hi - y_lo) if y_hi > y_lo else 0.5)
        parts.append(f'<line x1="{px0 - 5}" y1="{_fmt(py)}" x2="{px0}" y2="{_fmt(py)}" stroke="black"/>')
        parts.append(
            f'<text x="{px0 - 8}" y="{_fmt(py + 4)}" text-anchor="end" font-size="11">{ty:.4g}</text>'
        )
    return parts


def line_plot(
    xs: Sequence[float],
    ys: Sequence[float],
    x_label: str,
    y_label: str,
    title: str = "",
) -> str:
    """A single polyline over the data with labeled axes."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("need matching non-empty coordinate sequences")
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    pad = (y_hi - y_lo) * 0.05 or max(abs(y_hi), 1.0) * 0.05
    y_lo, y_hi = y_lo - pad, y_hi + pad
    px0, px1 = MARGIN_L, WIDTH - MARGIN_R
    py0, py1 = HEIGHT - MARGIN_B, MARGIN_T

    def sx(x):
        return px0 + (px1 - px0) * ((x - x_lo) / (x_hi - x_lo) if x_hi > x_lo else 0.5)

    def sy(y):
        return py0 - (py0 - py1) * (y - y_lo) / (y_hi - y_lo)

    pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in zip(xs, ys))
    parts = [
        _HEADER,
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
    ]
    parts.extend(_axes(x_lo, x_hi, y_lo, y_hi, x_label, y_label, title))
    parts.append(
        f'<polyline class="series" fill="none" stroke="#1b9e77" stroke-width="1.5" points="{pts}"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def raster_plot(
    x_values: Sequence[float],
    y_values: Sequence[float],
    cells: Sequence[Sequence[str]],
    x_label: str,
    y_label: str,
    title: str = "",
) -> str:
    """A colored raster: cells[i][j] classifies (x_values[i], y_values[j])."""
    if len(cells) != len(x_values) or any(len(row) != len(y_values) for row in cells):
        raise ValueError("cell matrix does not match the grids")
    px0, px1 = MARGIN_L, WIDTH - MARGIN_R
    py0, py1 = HEIGHT - MARGIN_B, MARGIN_T
    cw = (px1 - px0) / len(x_values)
    ch = (py0 - py1) / len(y_values)
    parts = [
        _HEADER,
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
    ]
    parts.extend(_axes(min(x_values), max(x_values), min(y_values), max(y_values),
                       x_label, y_label, title))
    parts.append('<g class="raster">')
    for i in range(len(x_values)):
        for j in range(len(y_values)):
            color = CELL_COLORS.get(cells[i][j], "#000000")
            x = px0 + i * cw
            y = py0 - (j + 1) * ch
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(cw)}" height="{_fmt(ch)}" '
                f'fill="{color}"/>'
            )
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
