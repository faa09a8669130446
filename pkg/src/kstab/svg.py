"""Deterministic SVG for two-coefficient pictures.

Coordinates are rounded to three decimals so identical inputs give
identical bytes.
"""
from __future__ import annotations

import math

from .errors import InputError
from .qgeom import fmt

SIZE = 400
PAD = 40


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]


def _angle_sorted(points):
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


def polytope_svg(vertices, title: str = "polytope") -> str:
    """Filled polygon (or segment/point) for a polytope in the unit square."""
    if any(len(v) != 2 for v in vertices):
        raise InputError("SVG output needs exactly two coefficients")
    span = SIZE - 2 * PAD

    def xy(p):
        return PAD + float(p[0]) * span, SIZE - PAD - float(p[1]) * span

    out = _header(title)
    out.append(f'<rect x="{PAD}" y="{PAD}" width="{span}" height="{span}" fill="none" '
               f'stroke="#999" stroke-dasharray="4 4"/>')
    pts = _angle_sorted(list(dict.fromkeys(tuple(v) for v in vertices)))
    if len(pts) >= 3:
        path = " ".join(f"{_num(a)},{_num(b)}" for a, b in map(xy, pts))
        out.append(f'<polygon points="{path}" fill="#cde" stroke="black"/>')
    elif len(pts) == 2:
        (x1, y1), (x2, y2) = map(xy, pts)
        out.append(f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
                   f'stroke="black" stroke-width="2"/>')
    for p in pts:
        x, y = xy(p)
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="3" fill="black"/>')
        out.append(f'<text x="{_num(x + 5)}" y="{_num(y - 5)}" font-size="11">'
                   f"({fmt(p[0])}, {fmt(p[1])})</text>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def chambers_svg(chambers, title: str = "chambers") -> str:
    """The segment ``gamma_1 + gamma_2 = 1`` drawn left (``gamma_1 = 0``) to
    right, walls as ticks and chambers labelled ``C0, C1, ...``."""
    if chambers.arrangement.ambient.ambient_dim != 2:
        raise InputError("SVG output needs exactly two forms")
    span = SIZE - 2 * PAD
    ymid = SIZE / 2

    def x_of(g1):
        return PAD + float(g1) * span

    out = _header(title)
    out.append(f'<line x1="{PAD}" y1="{_num(ymid)}" x2="{SIZE - PAD}" y2="{_num(ymid)}" '
               f'stroke="black" stroke-width="2"/>')
    cells = sorted(chambers.arrangement.cells, key=lambda c: c.point[0])
    label = 0
    for c in cells:
        x = x_of(c.point[0])
        if c.dim == 0:
            out.append(f'<line x1="{_num(x)}" y1="{_num(ymid - 15)}" x2="{_num(x)}" '
                       f'y2="{_num(ymid + 15)}" stroke="red" stroke-width="2"/>')
            out.append(f'<text x="{_num(x)}" y="{_num(ymid + 30)}" font-size="11" '
                       f'text-anchor="middle">({fmt(c.point[0])}, {fmt(c.point[1])})</text>')
        else:
            out.append(f'<text x="{_num(x)}" y="{_num(ymid - 20)}" font-size="12" '
                       f'text-anchor="middle">C{label}</text>')
            label += 1
    out.append("</svg>")
    return "\n".join(out) + "\n"
