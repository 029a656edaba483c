"""Lift a packing to spherical caps on S^d, form polar vertices, and test stresses.

Points of ``R^d`` are sent to the unit sphere in ``R^{d+1}`` by inverse
stereographic projection from the north pole ``(0, ..., 0, 1)``: the origin
lands on the south pole and infinity on the north pole.  The height
coordinate is the last one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .builder import Packing
from .geometry import Ball, ContactKind, invert_in_sphere
from .graphs import Graph
from .scalar import resolve_tolerance

RANK_TOLERANCE = 1e-8
FIT_RADIUS = 0.5


class LiftError(RuntimeError):
    pass


@dataclass(frozen=True)
class SphericalCap:
    """Cap ``{y in S^d : <y, center> >= cos(angle)}``."""

    center: tuple
    angle: float

    def __post_init__(self):
        if not 0 < self.angle < math.pi / 2:
            raise ValueError(f"cap angular radius {self.angle} outside (0, pi/2)")

    @property
    def dim(self) -> int:
        return len(self.center) - 1


def _quadric(b: Ball) -> tuple[float, np.ndarray, float]:
    """``(alpha, beta, gamma)`` with ``b = {x : alpha|x|^2 + 2<beta, x> + gamma >= 0}``."""
    if b.is_halfspace:
        return 0.0, np.array([float(x) for x in b.normal]) / 2, -float(b.offset)
    c = np.array([float(x) for x in b.center])
    r = float(b.radius)
    if float(b.curvature) > 0:
        return -1.0, c, r * r - c.dot(c)
    return 1.0, -c, c.dot(c) - r * r


def _cap_data(b: Ball) -> tuple[np.ndarray, float]:
    # the image is {y : <w, y> >= s} with w = (2 beta, alpha - gamma), s = -(alpha + gamma)
    alpha, beta, gamma = _quadric(b)
    w = np.append(2 * beta, alpha - gamma)
    return w, -(alpha + gamma)


def project_ball(b: Ball) -> SphericalCap:
    """Cap image of ``b``; raises when the image is not strictly inside a hemisphere."""
    w, s = _cap_data(b)
    norm = float(np.linalg.norm(w))
    if not s > 0:
        raise LiftError(f"ball {b} lifts to a cap of angular radius >= pi/2")
    return SphericalCap(tuple(float(x) for x in w / norm), math.acos(min(1.0, s / norm)))


def _clearance(x: np.ndarray, balls: Sequence[Ball]) -> float:
    """Distance from ``x`` to the union of the balls; negative inside one."""
    best = math.inf
    for b in balls:
        if b.is_halfspace:
            n = np.array([float(v) for v in b.normal])
            gap = float(b.offset) - x.dot(n)
        else:
            c = np.array([float(v) for v in b.center])
            dist = float(np.linalg.norm(x - c))
            gap = dist - b.radius if float(b.curvature) > 0 else float(b.radius) - dist
        best = min(best, gap)
    return best


def _search_box(balls: Sequence[Ball]) -> tuple[np.ndarray, np.ndarray]:
    finite = [b for b in balls if not b.is_halfspace and float(b.curvature) > 0]
    d = balls[0].dim
    if not finite:
        return -np.ones(d), np.ones(d)
    lo = np.min([np.array([float(v) for v in b.center]) - float(b.radius) for b in finite], axis=0)
    hi = np.max([np.array([float(v) for v in b.center]) + float(b.radius) for b in finite], axis=0)
    return lo, hi


def _candidate_points(balls: Sequence[Ball]) -> list[np.ndarray]:
    lo, hi = _search_box(balls)
    d = len(lo)
    pts = [(lo + hi) / 2]
    finite = [b for b in balls if not b.is_halfspace]
    for a, b in itertools.combinations(finite, 2):
        ca = np.array([float(v) for v in a.center])
        cb = np.array([float(v) for v in b.center])
        pts.append((ca + cb) / 2)
    for b in finite:
        c = np.array([float(v) for v in b.center])
        r = float(b.radius)
        for k in range(d):
            for sgn in (1.0, -1.0):
                e = np.zeros(d)
                e[k] = sgn
                pts.append(c + 1.05 * r * e)
    return pts


def gap_point(balls: Sequence[Ball]) -> tuple[np.ndarray, float]:
    """A point outside every ball with large clearance, found deterministically."""
    lo, hi = _search_box(balls)
    span = float(np.max(hi - lo)) or 1.0

    def objective(x):
        # keep the search inside the box so open regions cannot pull it to infinity
        outside = np.sum(np.maximum(lo - x, 0) + np.maximum(x - hi, 0))
        return -_clearance(x, balls) + 10 * outside

    start = max(_candidate_points(balls), key=lambda p: -objective(p))
    res = minimize(objective, start, method="Nelder-Mead",
                   options={"xatol": 1e-10 * span, "fatol": 1e-12, "maxiter": 4000})
    x = res.x if res.fun < objective(start) else start
    return x, _clearance(x, balls)


@dataclass(frozen=True)
class Normalization:
    """Similarity plus optional inversion applied before projecting."""

    inversion_center: tuple | None
    inversion_radius: float | None
    shift: tuple
    scale: float


def normalize(balls: Sequence[Ball]) -> tuple[list[Ball], Normalization]:
    """Move all balls into ``B(0, 1/2)`` by an inversion (if needed) and a similarity."""
    balls = [b.to_float() for b in balls]
    center = radius = None
    if any(b.is_halfspace or b.curvature < 0 for b in balls):
        p, clearance = gap_point(balls)
        if not clearance > 0:
            raise LiftError("no gap point found outside the balls")
        center, radius = tuple(float(x) for x in p), 1.0
        balls = [invert_in_sphere(b, center, radius) for b in balls]
        if any(b.is_halfspace or b.curvature < 0 for b in balls):
            raise LiftError("inversion at the gap point left an unbounded ball")
    cs = np.array([[float(x) for x in b.center] for b in balls])
    rs = np.array([float(b.radius) for b in balls])
    lo, hi = np.min(cs - rs[:, None], axis=0), np.max(cs + rs[:, None], axis=0)
    shift = (lo + hi) / 2
    extent = float(np.max(np.linalg.norm(cs - shift, axis=1) + rs))
    scale = 0.9 * FIT_RADIUS / extent
    moved = [Ball(curvature=float(b.curvature) / scale,
                  center=tuple((np.array(b.center, dtype=float) - shift) * scale))
             for b in balls]
    return moved, Normalization(center, radius, tuple(shift), scale)


def lift_to_caps(p: Packing | Sequence[Ball], normalize_first: bool | None = None
                 ) -> list[SphericalCap]:
    """Caps of all balls; normalizes first unless every cap already fits a hemisphere."""
    balls = list(p.balls if isinstance(p, Packing) else p)
    if normalize_first is None:
        normalize_first = not all(_cap_data(b)[1] > 0 for b in balls)
    if normalize_first:
        balls, _ = normalize(balls)
    return [project_ball(b) for b in balls]


def polar_vertex(cap: SphericalCap) -> np.ndarray:
    """Apex ``center / cos(angle)`` of the cone tangent to S^d along the cap boundary."""
    if not cap.angle < math.pi / 2:
        raise ValueError("polar vertex needs angular radius below pi/2")
    return np.array(cap.center) / math.cos(cap.angle)


def cap_contact(c1: SphericalCap, c2: SphericalCap, eps: float | None = None) -> ContactKind:
    eps = resolve_tolerance(eps)
    dist = math.acos(max(-1.0, min(1.0, float(np.dot(c1.center, c2.center)))))
    reach = c1.angle + c2.angle
    if abs(dist - reach) <= eps:
        return ContactKind.TANGENT
    if dist > reach:
        return ContactKind.DISJOINT
    if dist <= abs(c1.angle - c2.angle) + eps:
        return ContactKind.NESTED
    return ContactKind.OVERLAPPING


def segment_min_norm2(u: np.ndarray, v: np.ndarray) -> float:
    """``min |(1-t)u + tv|^2`` over ``t`` in ``[0, 1]``."""
    diff = v - u
    dd = float(diff.dot(diff))
    t = 0.0 if dd == 0 else min(1.0, max(0.0, -float(u.dot(diff)) / dd))
    x = u + t * diff
    return float(x.dot(x))


@dataclass
class PairReport:
    i: int
    j: int
    edge: bool
    inner: float
    min_norm2: float
    ok: bool


@dataclass
class EdgeTangencyReport:
    pairs: list = field(default_factory=list)
    tolerance: float = 1e-8

    @property
    def violations(self) -> list:
        return [p for p in self.pairs if not p.ok]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def to_csv(self) -> str:
        lines = ["i,j,edge,inner,min_norm2,ok"]
        for p in self.pairs:
            lines.append(f"{p.i},{p.j},{int(p.edge)},{p.inner:.17g},{p.min_norm2:.17g},{int(p.ok)}")
        return "\n".join(lines) + "\n"


def edge_tangency_report(caps: Sequence[SphericalCap], g: Graph,
                         tol: float = 1e-8) -> EdgeTangencyReport:
    """Edges need a segment touching the sphere; non-edges must stay strictly apart."""
    if len(caps) != g.n:
        raise ValueError("one cap per vertex required")
    vs = [polar_vertex(c) for c in caps]
    report = EdgeTangencyReport(tolerance=tol)
    for i, j in itertools.combinations(range(g.n), 2):
        inner = float(vs[i].dot(vs[j]))
        m2 = segment_min_norm2(vs[i], vs[j])
        if g.has_edge(i, j):
            ok = abs(m2 - 1) <= tol
        else:
            ok = abs(m2 - 1) > tol and inner < 1 - tol
        report.pairs.append(PairReport(i, j, g.has_edge(i, j), inner, m2, ok))
    return report


def stress_matrix(vertices: Sequence[np.ndarray], g: Graph) -> np.ndarray:
    """Equilibrium matrix: column ``(i, j)`` holds ``v_j - v_i`` at block i and ``v_i - v_j`` at block j."""
    vs = [np.asarray(v, dtype=float) for v in vertices]
    if len(vs) != g.n:
        raise ValueError("one vertex per graph vertex required")
    dim = len(vs[0]) if vs else 0
    edges = g.sorted_edges()
    m = np.zeros((g.n * dim, len(edges)))
    for col, (i, j) in enumerate(edges):
        m[i * dim:(i + 1) * dim, col] = vs[j] - vs[i]
        m[j * dim:(j + 1) * dim, col] = vs[i] - vs[j]
    return m


def stress_space(vertices: Sequence[np.ndarray], g: Graph,
                 rank_tol: float = RANK_TOLERANCE) -> tuple[int, np.ndarray]:
    """Dimension and orthonormal basis (columns) of the space of equilibrium stresses."""
    m = stress_matrix(vertices, g)
    if m.shape[1] == 0:
        return 0, np.zeros((0, 0))
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    cutoff = rank_tol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    basis = vt[rank:].T
    return m.shape[1] - rank, basis


@dataclass
class Lift:
    caps: list
    vertices: list
    graph: Graph
    stress_dim: int
    report: EdgeTangencyReport

    def to_json(self) -> dict:
        return {"vertices": [[float(x) for x in v] for v in self.vertices],
                "edges": [list(e) for e in self.graph.sorted_edges()],
                "stress_dim": self.stress_dim,
                "edge_tangency_ok": self.report.ok}


def lift_packing(p: Packing, tol: float = 1e-8) -> Lift:
    """Caps, polar vertices, edge-tangency report and stress dimension in one pass."""
    caps = lift_to_caps(p)
    vertices = [polar_vertex(c) for c in caps]
    dim, _ = stress_space(vertices, p.graph)
    return Lift(caps, vertices, p.graph, dim, edge_tangency_report(caps, p.graph, tol))
