"""SVG juggling diagrams.

Time (row index) runs along the horizontal axis and throw height
(a - S(a)) along the vertical one.  A ball thrown at time c that lands at
time a is drawn from (c, a - c) straight down to (a, 0); each ball is one
polyline through its throws, in its own color.
"""
from .combinatorics import balls
from .errors import NotReduced
from .recmat import is_reduced

PALETTE = ("#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d35400",
           "#16a085", "#7f8c8d", "#b7950b")

CELL = 28
MARGIN = 24


def render_juggling(C, window):
    if not is_reduced(C):
        raise NotReduced("juggling diagrams need a reduced matrix")
    lo, hi = window
    hmax = max(1, max(a - C.shape(a) for a in range(lo, hi + 1)))
    width = (hi - lo) * CELL + 2 * MARGIN
    height = hmax * CELL + 2 * MARGIN

    def xy(t, h):
        return (MARGIN + (t - lo) * CELL, MARGIN + (hmax - h) * CELL)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{MARGIN}" y1="{height - MARGIN}" x2="{width - MARGIN}" '
        f'y2="{height - MARGIN}" stroke="#000" stroke-width="1"/>',
    ]
    for t in range(lo, hi + 1):
        x, y = xy(t, 0)
        out.append(f'<text x="{x}" y="{y + 16}" font-size="10" text-anchor="middle">{t}</text>')
    for k, ball in enumerate(balls(C)):
        color = PALETTE[k % len(PALETTE)]
        mem = ball.members(lo - C.band, hi + C.band)
        pts = []
        for a in mem:
            c = C.shape(a)
            if a < lo or c > hi:
                continue
            pts.append(xy(c, a - c))
            pts.append(xy(a, 0))
        if pts:
            coords = " ".join(f"{x},{y}" for x, y in pts)
            out.append(f'<polyline data-ball="{k}" points="{coords}" fill="none" '
                       f'stroke="{color}" stroke-width="2"/>')
        for a in mem:
            if lo <= a <= hi:
                x, y = xy(a, 0)
                out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="{color}"/>')
    for a in range(lo, hi + 1):
        if C.shape(a) == a:
            x, y = xy(a, 0)
            out.append(f'<circle cx="{x}" cy="{y}" r="5" fill="none" stroke="#000" '
                       f'stroke-dasharray="2,2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
