"""Deterministic SVG pictures of drawings (display only; coordinates rounded to 3 decimals)."""

from __future__ import annotations

import itertools

from .geom import Color
from .graphs import Graph
from .orchard import Drawing

SIZE = 400.0
MARGIN = 30.0
FILL = {None: "#444444", Color.BLACK: "#000000", Color.WHITE: "#ffffff"}


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _clip(p, q, lo, hi):
    """Intersection of the line through ``p`` and ``q`` with the box ``[lo, hi]^2`` (Liang-Barsky)."""
    (x0, y0), (x1, y1) = p, q
    dx, dy = x1 - x0, y1 - y0
    t0, t1 = -1e18, 1e18
    for d, a in ((dx, x0), (dy, y0)):
        if d == 0:
            if not lo <= a <= hi:
                return None
            continue
        ta, tb = (lo - a) / d, (hi - a) / d
        t0, t1 = max(t0, min(ta, tb)), min(t1, max(ta, tb))
    if t0 > t1:
        return None
    return (x0 + t0 * dx, y0 + t0 * dy), (x0 + t1 * dx, y0 + t1 * dy)


def render_svg(d: Drawing, g: Graph, separating: bool = False) -> str:
    """Points (filled by color tag), edges as solid segments, optional dashed separating lines."""
    cfg = d.config
    xs = [float(p.x) for p in cfg.points]
    ys = [float(p.y) for p in cfg.points]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (SIZE - 2 * MARGIN) / span

    def screen(i):
        # y grows downwards in SVG
        return MARGIN + (xs[i] - min(xs)) * scale, SIZE - MARGIN - (ys[i] - min(ys)) * scale

    pts = [screen(i) for i in range(len(cfg))]
    pl = d.placement
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(SIZE)}" height="{_num(SIZE)}" '
        f'viewBox="0 0 {_num(SIZE)} {_num(SIZE)}">',
        f'<rect width="{_num(SIZE)}" height="{_num(SIZE)}" fill="#ffffff"/>',
    ]
    if separating:
        sep_lines = []
        table = cfg.orientations
        for u, v in g.sorted_edges():
            s, t = pl[u], pl[v]
            for k, l in itertools.combinations(range(len(cfg)), 2):
                if len({s, t, k, l}) == 4 and table[k, l, s] != table[k, l, t]:
                    sep_lines.append((k, l, u, v))
        out.append('<g class="separating" stroke="#c03030" stroke-width="0.8" stroke-dasharray="4 3" fill="none">')
        for k, l, u, v in sep_lines:
            seg = _clip(pts[k], pts[l], 0.0, SIZE)
            if seg is None:
                continue
            (x0, y0), (x1, y1) = seg
            out.append(
                f'<line x1="{_num(x0)}" y1="{_num(y0)}" x2="{_num(x1)}" y2="{_num(y1)}">'
                f"<title>line {k}-{l} separates edge {u}-{v}</title></line>"
            )
        out.append("</g>")
    out.append('<g class="edges" stroke="#1f4e9c" stroke-width="1.5">')
    for u, v in g.sorted_edges():
        (x0, y0), (x1, y1) = pts[pl[u]], pts[pl[v]]
        out.append(f'<line x1="{_num(x0)}" y1="{_num(y0)}" x2="{_num(x1)}" y2="{_num(y1)}"/>')
    out.append("</g>")
    out.append('<g class="points" stroke="#000000" stroke-width="1">')
    inv = d.inverse
    for i, (x, y) in enumerate(pts):
        color = None if cfg.colors is None else cfg.colors[i]
        out.append(
            f'<circle cx="{_num(x)}" cy="{_num(y)}" r="5" fill="{FILL[color]}"><title>vertex {inv[i]}</title></circle>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
