"""Minimal deterministic SVG output: line plots and grid heatmaps.

Coordinates are written with a fixed number of decimals so identical data
always produce identical bytes.
"""

import math

WIDTH, HEIGHT = 640, 480
MARGIN = 60
MISSING_FILL = "#c8c8c8"


def _fmt(v):
    return f"{v:.3f}"


def _escape(text):
    return (str(text).replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def _range(vals):
    lo, hi = min(vals), max(vals)
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def _header(title):
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<title>{_escape(title)}</title>',
        f'<rect class="background" x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]


def _axes(xlabel, ylabel, xr, yr):
    x0, y0 = MARGIN, HEIGHT - MARGIN
    x1, y1 = WIDTH - MARGIN, MARGIN
    return [
        f'<line class="axis" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{(x0 + x1) // 2}" y="{HEIGHT - 15}" text-anchor="middle" '
        f'font-size="14">{_escape(xlabel)}</text>',
        f'<text x="15" y="{(y0 + y1) // 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 15 {(y0 + y1) // 2})">{_escape(ylabel)}</text>',
        f'<text x="{x0}" y="{y0 + 18}" font-size="11">{xr[0]:.4g}</text>',
        f'<text x="{x1}" y="{y0 + 18}" text-anchor="end" font-size="11">{xr[1]:.4g}</text>',
        f'<text x="{x0 - 5}" y="{y0}" text-anchor="end" font-size="11">{yr[0]:.4g}</text>',
        f'<text x="{x0 - 5}" y="{y1 + 10}" text-anchor="end" font-size="11">{yr[1]:.4g}</text>',
    ]


def _scale(v, lo, hi, a, b):
    return a + (v - lo) / (hi - lo) * (b - a)


def line_plot(xs, ys, xlabel, ylabel, title=""):
    """SVG text of a polyline through (xs, ys), sorted by x."""
    pts = sorted((x, y) for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y))
    if not pts:
        raise ValueError("no finite points to plot")
    xr = _range([p[0] for p in pts])
    yr = _range([p[1] for p in pts])
    coords = " ".join(
        f"{_fmt(_scale(x, *xr, MARGIN, WIDTH - MARGIN))},"
        f"{_fmt(_scale(y, *yr, HEIGHT - MARGIN, MARGIN))}" for x, y in pts)
    out = _header(title or f"{ylabel} vs {xlabel}") + _axes(xlabel, ylabel, xr, yr)
    out.append(f'<polyline class="data" fill="none" stroke="#1f4e9c" stroke-width="1.5" '
               f'points="{coords}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _colour(t):
    # blue -> white -> red
    t = min(1.0, max(0.0, t))
    if t < 0.5:
        s = t / 0.5
        r, g, b = 40 + 215 * s, 80 + 175 * s, 200 + 55 * s
    else:
        s = (t - 0.5) / 0.5
        r, g, b = 255, 255 - 205 * s, 255 - 215 * s
    return f"#{int(round(r)):02x}{int(round(g)):02x}{int(round(b)):02x}"


def heatmap(xs, ys, vals, xlabel, ylabel, vlabel, title=""):
    """SVG text with one rect per (x, y) grid node; None or NaN values are grey.

    xs and ys are node coordinates of a tensor grid (any order).
    """
    ux = sorted(set(xs))
    uy = sorted(set(ys))
    if len(ux) * len(uy) != len(vals) or not ux:
        raise ValueError("heatmap data do not form a complete rectangular grid")
    finite = [v for v in vals if v is not None and math.isfinite(v)]
    vr = _range(finite) if finite else (0.0, 1.0)
    xr, yr = _range(ux), _range(uy)
    w = (WIDTH - 2 * MARGIN) / len(ux)
    h = (HEIGHT - 2 * MARGIN) / len(uy)
    ix = {x: i for i, x in enumerate(ux)}
    iy = {y: j for j, y in enumerate(uy)}
    cells = {}
    for x, y, v in zip(xs, ys, vals):
        cells[(ix[x], iy[y])] = v
    if len(cells) != len(vals):
        raise ValueError("heatmap data contain duplicate grid nodes")
    out = _header(title or f"{vlabel} over ({xlabel}, {ylabel})") + _axes(xlabel, ylabel, xr, yr)
    for j in range(len(uy)):
        for i in range(len(ux)):
            v = cells[(i, j)]
            fill = (_colour(_scale(v, *vr, 0.0, 1.0))
                    if v is not None and math.isfinite(v) else MISSING_FILL)
            x = MARGIN + i * w
            y = HEIGHT - MARGIN - (j + 1) * h
            out.append(f'<rect class="cell" x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" '
                       f'height="{_fmt(h)}" fill="{fill}"/>')
    out.append(f'<text x="{WIDTH - MARGIN}" y="{MARGIN - 20}" text-anchor="end" font-size="12">'
               f'{_escape(vlabel)}: {vr[0]:.4g} .. {vr[1]:.4g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
