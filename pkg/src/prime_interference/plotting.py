"""Hand-rolled SVG output.

Everything is formatted with fixed precision and no timestamps or ids, so the
same inputs always give the same bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .analysis import Peak
from .reconstruction import Reconstruction

__all__ = ["Series", "Panel", "SvgStyle", "emit_svg", "render_panels"]

S_COLOR = "#1f4e9c"
T_COLOR = "#c0392b"


@dataclass(frozen=True)
class SvgStyle:
    width: int = 900
    panel_height: int = 320
    log_x: bool = True
    show_t: bool = True
    title: str = ""
    precision: int = 2


@dataclass
class Series:
    label: str
    y: np.ndarray
    color: str = S_COLOR
    dashed: bool = False


@dataclass
class Panel:
    x: np.ndarray
    series: list[Series]
    gridlines: list[int] = field(default_factory=list)
    title: str = ""


_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 60, 20, 30, 40


def _fmt(v: float, prec: int) -> str:
    s = f"{v:.{prec}f}"
    return "0" if float(s) == 0 else s


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-12 * step:
        out.append(round(v, 12))
        v += step
    return out


def _log_ticks(lo: float, hi: float) -> list[float]:
    """1-2-5 values between e^lo and e^hi."""
    out = []
    for k in range(math.floor(lo / math.log(10)) - 1, math.ceil(hi / math.log(10)) + 1):
        for m in (1, 2, 5):
            v = m * 10.0**k
            if lo <= math.log(v) <= hi:
                out.append(v)
    return out


def _panel_svg(panel: Panel, style: SvgStyle, top: float) -> list[str]:
    w, h, p = style.width, style.panel_height, style.precision
    x0, x1 = _MARGIN_L, w - _MARGIN_R
    y0, y1 = top + _MARGIN_T, top + h - _MARGIN_B
    xs = np.log(panel.x) if style.log_x else np.asarray(panel.x, dtype=float)
    xlo, xhi = float(xs[0]), float(xs[-1])
    ys = [s.y for s in panel.series]
    ylo = min(float(np.min(v)) for v in ys)
    yhi = max(float(np.max(v)) for v in ys)
    if yhi - ylo < 1e-12:
        ylo, yhi = ylo - 1.0, yhi + 1.0
    pad = 0.05 * (yhi - ylo)
    ylo, yhi = ylo - pad, yhi + pad

    def px(v):
        return x0 + (v - xlo) / (xhi - xlo) * (x1 - x0)

    def py(v):
        return y1 - (v - ylo) / (yhi - ylo) * (y1 - y0)

    out = ["<g>"]
    if panel.title:
        out.append(f'<text x="{w / 2:.0f}" y="{top + 18:.0f}" text-anchor="middle" font-size="14">{_escape(panel.title)}</text>')
    out.append(
        f'<rect x="{x0}" y="{_fmt(y0, p)}" width="{x1 - x0}" height="{_fmt(y1 - y0, p)}" '
        'fill="none" stroke="#000" stroke-width="1"/>'
    )
    for n in sorted(set(panel.gridlines)):
        v = math.log(n) if style.log_x else float(n)
        if not xlo <= v <= xhi:
            continue
        gx = _fmt(px(v), p)
        out.append(f'<line x1="{gx}" y1="{_fmt(y0, p)}" x2="{gx}" y2="{_fmt(y1, p)}" stroke="#bbb" stroke-width="0.6"/>')
        out.append(f'<text x="{gx}" y="{_fmt(y0 - 3, p)}" text-anchor="middle" font-size="9" fill="#555">{n}</text>')
    if ylo < 0 < yhi:
        zy = _fmt(py(0.0), p)
        out.append(f'<line x1="{x0}" y1="{zy}" x2="{x1}" y2="{zy}" stroke="#888" stroke-width="0.5"/>')
    xt = _log_ticks(xlo, xhi) if style.log_x else _ticks(xlo, xhi)
    for t in xt:
        v = math.log(t) if style.log_x else t
        if not xlo <= v <= xhi:
            continue
        tx = _fmt(px(v), p)
        out.append(f'<line x1="{tx}" y1="{_fmt(y1, p)}" x2="{tx}" y2="{_fmt(y1 + 4, p)}" stroke="#000"/>')
        out.append(f'<text x="{tx}" y="{_fmt(y1 + 16, p)}" text-anchor="middle" font-size="10">{t:g}</text>')
    for t in _ticks(ylo, yhi):
        ty = _fmt(py(t), p)
        out.append(f'<line x1="{x0 - 4}" y1="{ty}" x2="{x0}" y2="{ty}" stroke="#000"/>')
        out.append(f'<text x="{x0 - 6}" y="{ty}" text-anchor="end" dominant-baseline="middle" font-size="10">{t:g}</text>')
    xlabel = "x (log scale)" if style.log_x else "x"
    out.append(f'<text x="{(x0 + x1) / 2:.0f}" y="{_fmt(y1 + 32, p)}" text-anchor="middle" font-size="11">{xlabel}</text>')
    for k, s in enumerate(panel.series):
        pts = " ".join(f"{_fmt(px(a), p)},{_fmt(py(b), p)}" for a, b in zip(xs, s.y))
        dash = ' stroke-dasharray="4,3"' if s.dashed else ""
        out.append(f'<polyline fill="none" stroke="{s.color}" stroke-width="1"{dash} points="{pts}"/>')
    n = len(panel.series)
    out.append(
        f'<rect x="{x1 - 156}" y="{_fmt(y0 + 4, p)}" width="150" height="{14 * n + 6}" '
        'fill="#fff" fill-opacity="0.9" stroke="#ccc" stroke-width="0.5"/>'
    )
    for k, s in enumerate(panel.series):
        dash = ' stroke-dasharray="4,3"' if s.dashed else ""
        ly = _fmt(y0 + 14 + 14 * k, p)
        out.append(f'<line x1="{x1 - 150}" y1="{ly}" x2="{x1 - 130}" y2="{ly}" stroke="{s.color}"{dash}/>')
        out.append(f'<text x="{x1 - 125}" y="{ly}" dominant-baseline="middle" font-size="10">{_escape(s.label)}</text>')
    out.append("</g>")
    return out


def render_panels(panels: Sequence[Panel], style: SvgStyle = SvgStyle()) -> str:
    total_h = style.panel_height * len(panels) + (24 if style.title else 0)
    head = 24 if style.title else 0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}" height="{total_h}" '
        f'viewBox="0 0 {style.width} {total_h}" font-family="sans-serif">',
        f'<rect width="{style.width}" height="{total_h}" fill="#fff"/>',
    ]
    if style.title:
        out.append(f'<text x="{style.width / 2:.0f}" y="18" text-anchor="middle" font-size="15">{_escape(style.title)}</text>')
    for i, panel in enumerate(panels):
        out.extend(_panel_svg(panel, style, head + i * style.panel_height))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(R: Reconstruction, peaks: Sequence[Peak] = (), style: SvgStyle = SvgStyle()) -> str:
    """Plot S (and T) of one reconstruction, with gridlines at matched prime powers."""
    if R.grid.n_points < 2:
        raise ValueError("nothing to plot")
    name = ",".join(R.character_ids)
    series = [Series(f"S [{name}]", R.s_values, S_COLOR)]
    if style.show_t:
        series.append(Series(f"T [{name}]", R.t_values, T_COLOR, dashed=True))
    grid = [p.nearest_pp for p in peaks if p.nearest_pp is not None]
    return render_panels([Panel(R.x, series, grid)], style)
