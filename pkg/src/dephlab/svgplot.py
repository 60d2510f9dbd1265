"""Minimal static SVG line plots: axes, ticks, legend, polyline series.

Figures are diagnostics; anything fancier should be regenerated from the
CSV emitted next to every plot.
"""

import math
from xml.sax.saxutils import escape

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 64, 16, 28, 44
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def _finite(values):
    return [v for v in values if isinstance(v, (int, float)) and math.isfinite(v)]


def _ticks(lo, hi, n=5):
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    return [lo + span * i / (n - 1) for i in range(n)]


def plot_lines(path, series, title="", xlabel="", ylabel=""):
    """Write an SVG line plot.

    series: iterable of (label, xs, ys); non-finite ys break the polyline.
    """
    xs_all = [x for _, xs, _ in series for x in _finite(xs)]
    ys_all = [y for _, _, ys in series for y in _finite(ys)]
    if not xs_all or not ys_all:
        xs_all, ys_all = [0.0, 1.0], [0.0, 1.0]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.04 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    pw = _W - _ML - _MR
    ph = _H - _MT - _MB

    def px(x):
        return _ML + pw * (x - x_lo) / (x_hi - x_lo) if x_hi > x_lo else _ML

    def py(y):
        return _MT + ph * (1.0 - (y - y_lo) / (y_hi - y_lo))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="11">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="18" text-anchor="middle" font-size="13">{escape(title)}</text>',
    ]
    # axes
    out.append(f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_MT + ph}" stroke="black"/>')
    out.append(f'<line x1="{_ML}" y1="{_MT + ph}" x2="{_ML + pw}" y2="{_MT + ph}" stroke="black"/>')
    for tx in _ticks(x_lo, x_hi):
        out.append(f'<line x1="{px(tx):.1f}" y1="{_MT + ph}" x2="{px(tx):.1f}" y2="{_MT + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{px(tx):.1f}" y="{_MT + ph + 16}" text-anchor="middle">{tx:.4g}</text>')
    for ty in _ticks(y_lo, y_hi):
        out.append(f'<line x1="{_ML - 4}" y1="{py(ty):.1f}" x2="{_ML}" y2="{py(ty):.1f}" stroke="black"/>')
        out.append(f'<text x="{_ML - 7}" y="{py(ty) + 3.5:.1f}" text-anchor="end">{ty:.4g}</text>')
    out.append(f'<text x="{_ML + pw / 2:.1f}" y="{_H - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{_MT + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {_MT + ph / 2:.1f})">{escape(ylabel)}</text>'
    )
    # series
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        points = []
        chunks = []
        for x, y in zip(xs, ys):
            if isinstance(y, float) and not math.isfinite(y):
                if points:
                    chunks.append(points)
                points = []
                continue
            points.append(f"{px(x):.2f},{py(y):.2f}")
        if points:
            chunks.append(points)
        for chunk in chunks:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(chunk)}"/>')
        ly = _MT + 14 + 14 * i
        out.append(f'<line x1="{_ML + pw - 130}" y1="{ly - 4}" x2="{_ML + pw - 110}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{_ML + pw - 105}" y="{ly}">{escape(str(label))}</text>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")
