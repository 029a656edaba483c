"""SVG cross-sections of packings.

A 2-dimensional packing is drawn as is.  Higher-dimensional packings are cut
by the hyperplane ``<a, x> = offset``; every ball meeting it leaves a disk,
every half-space a half-plane clipped to the viewport.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .geometry import Ball

WIDTH = 600
PALETTE = ("#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#bbbbbb")


def _plane_frame(normal: np.ndarray, offset: float):
    """Origin and orthonormal in-plane basis for ``<normal, x> = offset``."""
    norm = float(np.linalg.norm(normal))
    if norm == 0:
        raise ValueError("cutting plane normal must be non-zero")
    n = normal / norm
    origin = n * (offset / norm)
    # Gram-Schmidt on the standard basis, skipping directions along n
    basis = []
    for k in range(len(n)):
        e = np.zeros(len(n))
        e[k] = 1.0
        v = e - e.dot(n) * n
        for b in basis:
            v -= v.dot(b) * b
        if np.linalg.norm(v) > 1e-9:
            basis.append(v / np.linalg.norm(v))
    return n, origin, np.array(basis[:2])


def cross_section(balls: Sequence[Ball], plane: Sequence[float] | None = None):
    """Disks ``(index, center2, radius, exterior)`` and half-planes ``(index, m, b)`` meaning ``<m, y> >= b``."""
    balls = [b.to_float() for b in balls]
    d = balls[0].dim if balls else 2
    if d == 2:
        n = None
        frame = np.identity(2)
        origin = np.zeros(2)
    else:
        if plane is None:
            plane = [0.0] * (d - 1) + [1.0, 0.0]
        if len(plane) != d + 1:
            raise ValueError(f"plane needs {d + 1} numbers: normal then offset")
        n, origin, frame = _plane_frame(np.array(plane[:-1], dtype=float), float(plane[-1]))
    disks, halfplanes = [], []
    for idx, b in enumerate(balls):
        if b.is_halfspace:
            hn = np.array(b.normal)
            m = frame.dot(hn)
            rhs = b.offset - origin.dot(hn)
            if np.linalg.norm(m) < 1e-12:
                if rhs <= 0:
                    halfplanes.append((idx, None, None))  # covers the whole plane
                continue
            halfplanes.append((idx, m, rhs))
            continue
        c = np.array(b.center)
        dist = 0.0 if n is None else float((c - origin).dot(n))
        r = float(b.radius)
        if abs(dist) < r:
            disks.append((idx, frame.dot(c - origin), math.sqrt(r * r - dist * dist),
                          b.curvature < 0))
    return disks, halfplanes


def _clip(polygon: list, m: np.ndarray, rhs: float) -> list:
    """Sutherland-Hodgman clip of a convex polygon to ``<m, y> >= rhs``."""
    out = []
    for k in range(len(polygon)):
        p, q = polygon[k], polygon[(k + 1) % len(polygon)]
        fp, fq = m.dot(p) - rhs, m.dot(q) - rhs
        if fp >= 0:
            out.append(p)
        if (fp >= 0) != (fq >= 0):
            t = fp / (fp - fq)
            out.append(p + t * (q - p))
    return out


def _fmt(x: float) -> str:
    text = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def render_svg(balls: Sequence[Ball], plane: Sequence[float] | None = None,
               width: int = WIDTH) -> str:
    disks, halfplanes = cross_section(balls, plane)
    if disks:
        lo = np.min([c - r for _, c, r, _ in disks], axis=0)
        hi = np.max([c + r for _, c, r, _ in disks], axis=0)
    else:
        lo, hi = np.array([-1.0, -1.0]), np.array([1.0, 1.0])
    pad = 0.1 * float(np.max(hi - lo) or 1.0)
    lo, hi = lo - pad, hi + pad
    span = float(np.max(hi - lo))
    scale = width / span
    height = int(round(width * float(hi[1] - lo[1]) / span))

    def to_px(p):
        return (float(p[0] - lo[0]) * scale, float(hi[1] - p[1]) * scale)

    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">',
             f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>']
    box = [np.array([lo[0], lo[1]]), np.array([hi[0], lo[1]]),
           np.array([hi[0], hi[1]]), np.array([lo[0], hi[1]])]
    for idx, m, rhs in halfplanes:
        poly = box if m is None else _clip(box, m, rhs)
        if len(poly) < 3:
            continue
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(to_px, poly))
        lines.append(f'<polygon data-ball="{idx}" points="{pts}" fill="#dddddd" '
                     'stroke="#555555" stroke-width="1"/>')
    for idx, c, r, exterior in disks:
        x, y = to_px(c)
        colour = PALETTE[idx % len(PALETTE)]
        fill = "none" if exterior else colour
        lines.append(f'<circle data-ball="{idx}" cx="{_fmt(x)}" cy="{_fmt(y)}" '
                     f'r="{_fmt(r * scale)}" fill="{fill}" fill-opacity="0.6" '
                     'stroke="black" stroke-width="1"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
