"""Minimal SVG line plots: axes, ticks, a few series and a legend."""

import math
from xml.sax.saxutils import escape

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd")


def _ticks(lo, hi, n=5):
    if hi == lo:
        return [lo]
    raw = (hi - lo) / n
    step = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 5, 10):
        if raw <= mult * step:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    out = []
    k = 0
    while first + k * step <= hi + 1e-9 * step:
        out.append(first + k * step)
        k += 1
    return out


def line_plot(series, xlabel="", ylabel="", title="", width=640, height=420, dashed=()):
    """Render ``series`` = [(label, xs, ys), ...] to an SVG string.

    Non-finite or ``None`` points break the line. Labels listed in ``dashed``
    are drawn with a dashed stroke.
    """
    pts = [(x, y) for _, xs, ys in series for x, y in zip(xs, ys)
           if y is not None and math.isfinite(x) and math.isfinite(y)]
    if pts:
        x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
        y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
    else:
        x0, x1, y0, y1 = 0.0, 1.0, 0.0, 1.0
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    left, right, top, bottom = 70, 20, 30, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + (y1 - y) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'font-family="sans-serif" font-size="11">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{sx(t):.2f}" y1="{top + ph}" x2="{sx(t):.2f}" y2="{top + ph + 4}" '
                   'stroke="black"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{top + ph + 16}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{left - 4}" y1="{sy(t):.2f}" x2="{left}" y2="{sy(t):.2f}" '
                   'stroke="black"/>')
        out.append(f'<text x="{left - 6}" y="{sy(t) + 4:.2f}" text-anchor="end">{t:g}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{height - 12}" text-anchor="middle">'
               f'{escape(xlabel)}</text>')
    out.append(f'<text transform="translate(16,{top + ph / 2}) rotate(-90)" '
               f'text-anchor="middle">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{left + pw / 2}" y="18" text-anchor="middle">{escape(title)}</text>')
    for k, (label, xs, ys) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        dash = ' stroke-dasharray="6,4"' if label in dashed else ""
        segments, cur = [], []
        for x, y in zip(xs, ys):
            if y is None or not (math.isfinite(x) and math.isfinite(y)):
                if cur:
                    segments.append(cur)
                cur = []
                continue
            cur.append(f"{sx(x):.2f},{sy(y):.2f}")
        if cur:
            segments.append(cur)
        for seg in segments:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} '
                       f'points="{" ".join(seg)}"/>')
        ly = top + 14 + 16 * k
        out.append(f'<line x1="{left + pw - 120}" y1="{ly}" x2="{left + pw - 100}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="1.5"{dash}/>')
        out.append(f'<text x="{left + pw - 95}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
