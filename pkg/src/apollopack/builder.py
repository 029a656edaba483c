"""Ball packings: validation, tangency graphs, inductive construction and named packings."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import scalar
from .descartes import DescartesConfiguration, canonical_configuration, replace
from .geometry import Ball, ContactKind, contact
from .graphs import Graph, is_k_tree, is_stacked_polytopal
from .scalar import Surd, resolve_tolerance


class PackingError(ValueError):
    """A ball collection that is not a packing of the requested graph.

    ``pair`` holds the first offending pair of ball indices and ``kind`` is
    ``"overlap"`` (interiors meet) or ``"extra-tangency"`` (a tangency the
    graph does not ask for).
    """

    def __init__(self, message: str, pair: tuple | None = None, kind: str = "overlap",
                 contact_kind: str | None = None, trace: BuildTrace | None = None,
                 result: Packing | None = None):
        super().__init__(message)
        self.pair = pair
        self.kind = kind
        self.contact_kind = contact_kind
        self.trace = trace
        self.result = result

    def to_json(self) -> dict:
        return {"failure": self.kind, "pair": list(self.pair) if self.pair else None,
                "contact": self.contact_kind, "message": str(self)}


class OverlapError(PackingError):
    pass


class NotStackedError(ValueError):
    pass


class UnsupportedDimension(ValueError):
    pass


def tangency_graph(balls: Sequence[Ball], eps: float | None = None) -> Graph:
    """Graph on ball indices with an edge per tangent pair; raises on non-packings."""
    eps = resolve_tolerance(eps)
    edges = []
    for i, j in itertools.combinations(range(len(balls)), 2):
        c = contact(balls[i], balls[j], eps)
        if not c.admissible:
            raise OverlapError(f"balls {i} and {j} are {c.kind.value}", (i, j),
                               contact_kind=c.kind.value)
        if c.tangent:
            edges.append((i, j))
    return Graph(len(balls), edges)


@dataclass(frozen=True)
class Packing:
    d: int
    balls: tuple
    tolerance: float
    graph: Graph
    meta: dict = field(default_factory=dict, compare=False)

    @classmethod
    def of(cls, d: int, balls: Sequence[Ball], eps: float | None = None,
           meta: dict | None = None) -> Packing:
        """Validate ``balls`` and derive the tangency graph."""
        balls = tuple(balls)
        if any(b.dim != d for b in balls):
            raise ValueError("ball dimension does not match the packing")
        eps = resolve_tolerance(eps)
        return cls(d, balls, eps, tangency_graph(balls, eps), dict(meta or {}))

    @property
    def tangency_graph(self) -> Graph:
        return self.graph

    def __len__(self):
        return len(self.balls)


@dataclass(frozen=True)
class TraceStep:
    vertex: int
    clique: tuple
    replaced: int
    ball: Ball
    contacts: tuple  # (prior vertex, contact kind) in construction order

    def to_json(self) -> dict:
        from .serialize import ball_to_json

        return {"vertex": self.vertex, "clique": list(self.clique), "replaced": self.replaced,
                "ball": ball_to_json(self.ball),
                "contacts": [[v, k] for v, k in self.contacts]}


@dataclass
class BuildTrace:
    order: list
    steps: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"order": list(self.order), "steps": [s.to_json() for s in self.steps]}


def _check_order(g: Graph, k: int, order: Sequence[int]) -> list[int]:
    order = [int(v) for v in order]
    if sorted(order) != list(range(g.n)):
        raise NotStackedError("construction order must list every vertex exactly once")
    if not g.is_clique(order[:k + 1]):
        raise NotStackedError("construction order must start with a base clique")
    placed = set(order[:k + 1])
    for v in order[k + 1:]:
        back = g.neighbors(v) & placed
        if len(back) != k or not g.is_clique(back):
            raise NotStackedError(f"vertex {v} does not attach to a {k}-clique of earlier vertices")
        placed.add(v)
    return order


def build_from_graph(g: Graph, d: int, order: Sequence[int] | None = None,
                     eps: float | None = None, exact: bool | None = None,
                     allow_extra_tangency: bool = False) -> tuple[Packing, BuildTrace]:
    """Apollonian packing of a stacked ``(d+1)``-polytopal graph.

    The first ``d+2`` vertices of the construction order are placed on
    :func:`canonical_configuration` in index order; every later vertex gets the
    ball obtained by swapping out the unique earlier ball that completes its
    attachment clique to a Descartes configuration.  Ball ``i`` of the result
    represents vertex ``i``.

    Raises :class:`NotStackedError` for inputs outside the class and
    :class:`PackingError` (carrying the partial trace) when a new ball meets an
    earlier one in a way the graph forbids.
    """
    if d < 2:
        raise UnsupportedDimension("packings need d >= 2")
    eps = resolve_tolerance(eps)
    verdict = is_stacked_polytopal(g, d + 1)
    if not verdict:
        raise NotStackedError(f"graph is not stacked {d + 1}-polytopal: {verdict.reason}")
    if order is None:
        _, order = is_k_tree(g, d + 1)
    order = _check_order(g, d + 1, order)
    base = canonical_configuration(d, exact)
    balls: dict[int, Ball] = dict(zip(order[:d + 2], base.balls))
    trace = BuildTrace(order)
    placed = list(order[:d + 2])
    for v in order[d + 2:]:
        clique = tuple(sorted(g.neighbors(v) & set(placed)))
        completing = [u for u in placed if set(clique) <= g.neighbors(u)]
        if len(completing) != 1:
            raise NotStackedError(f"vertex {v}: {len(completing)} earlier balls complete its clique")
        old = completing[0]
        for u in clique:
            if not contact(balls[old], balls[u], eps).tangent:
                raise PackingError(f"ball {old} is not tangent to ball {u}", (old, u),
                                   contact_kind=contact(balls[old], balls[u], eps).kind.value,
                                   trace=trace)
        config = DescartesConfiguration(d, [balls[u] for u in clique] + [balls[old]])
        _, new = replace(config, d + 2, eps)
        contacts = []
        failure = None
        for u in placed:
            c = contact(balls[u], new, eps)
            contacts.append((u, c.kind.value))
            if failure is not None:
                continue
            if not c.admissible:
                failure = OverlapError(f"ball for vertex {v} is {c.kind.value} with ball {u}",
                                       (u, v), "overlap", c.kind.value)
            elif c.tangent and u not in clique and not allow_extra_tangency:
                failure = PackingError(f"ball for vertex {v} is tangent to ball {u} "
                                       "but the graph has no such edge",
                                       (u, v), "extra-tangency", c.kind.value)
        trace.steps.append(TraceStep(v, clique, old, new, tuple(contacts)))
        if failure is not None:
            failure.trace = trace
            raise failure
        balls[v] = new
        placed.append(v)
    packing = Packing.of(d, [balls[v] for v in range(g.n)], eps,
                         {"construction": "stacked", "order": list(order)})
    if packing.graph != g and not allow_extra_tangency:
        raise PackingError("tangency graph differs from the input graph", kind="extra-tangency",
                           trace=trace)
    return packing, trace


# -- named packings -------------------------------------------------------------

def _axis_chain(d: int, m: int, eps: float | None):
    """Axis balls of the K_d * P_m construction, alternating the A and B ends."""
    config = canonical_configuration(d)
    a, b, *units = config.balls
    path_balls = [a, b][:m]
    if m <= 2:
        return units, path_balls, []
    # ends[side] = (end ball, ball before it), so the next ball is tangent to the end
    ends = {0: (a, b), 1: (b, a)}
    chain = []
    for step in range(m - 2):
        side = step % 2
        end, before = ends[side]
        _, new = replace(DescartesConfiguration(d, [end, *units, before]), d + 2, eps)
        chain.append((side, new))
        ends[side] = (new, end)
    return units, path_balls, chain


def canonical_kd_pm(d: int, m: int, eps: float | None = None) -> Packing:
    """Packing of ``K_d * P_m`` from the axis construction.

    Two half-spaces and ``d`` unit balls realise ``K_d * P_2``; further path
    balls are stacked on the axis, alternately tangent to the two ends of the
    path.  Raises :class:`PackingError` when a new ball meets an earlier one.
    For ``d = 3, m = 6`` the last ball closes the chain: the result is Soddy's
    hexlet and ``meta["closed_chain"]`` is true.
    """
    if d < 3:
        raise UnsupportedDimension("the axis construction needs d >= 3")
    if m < 0:
        raise ValueError("path length must be non-negative")
    eps = resolve_tolerance(eps)
    units, path_balls, chain = _axis_chain(d, m, eps)
    # path order ... E C A B D F ...: record neighbours on the path
    placed = list(units) + list(path_balls)
    path_index = {len(units) + k: k for k in range(len(path_balls))}
    ends = {0: len(units), 1: len(units) + 1} if len(path_balls) == 2 else {}
    closed = False
    for step, (side, new) in enumerate(chain, start=1):
        idx = len(placed)
        for u, ball in enumerate(placed):
            c = contact(ball, new, eps)
            if not c.admissible:
                raise OverlapError(f"axis ball {idx} is {c.kind.value} with ball {u}",
                                   (u, idx), "overlap", c.kind.value)
            if c.tangent and u >= len(units) and u != ends[side]:
                if d == 3 and m == 6 and step == len(chain) and u == ends[1 - side]:
                    closed = True
                    continue
                raise PackingError(f"axis ball {idx} is tangent to ball {u} off the path",
                                   (u, idx), "extra-tangency", c.kind.value)
        placed.append(new)
        ends[side] = idx
    meta = {"construction": "K_d*P_m", "d": d, "m": m,
            "diameters": [2 * b.radius for _, b in chain]}
    if closed:
        meta["closed_chain"] = True
        meta["note"] = "the last path ball closes the chain; tangency graph is K3*C6"
    return Packing.of(d, placed, eps, meta)


def soddy_hexlet() -> Packing:
    """Three unit balls, two half-spaces and a closed chain of four axis balls (exact)."""
    return canonical_kd_pm(3, 6)


def _orthoplex_units(d: int) -> list[Ball]:
    root2 = Surd(0, 1, 2)
    units = []
    for i in range(d - 1):
        for sgn in (1, -1):
            center = [Fraction(1)] + [Fraction(0)] * (d - 1)
            center[1 + i] = sgn * root2
            units.append(Ball(curvature=1, center=tuple(center)))
    return units


def _orthoplex_frame(d: int):
    if d < 3:
        raise UnsupportedDimension("orthoplex joins need d >= 3")
    e1 = (1,) + (0,) * (d - 1)
    a = Ball(curvature=0, normal=tuple(-x for x in e1), offset=0)
    b = Ball(curvature=0, normal=e1, offset=2)
    # unit centers sit at distance rho = sqrt(2) from the axis; an axis ball
    # tangent to a half-space and all units has (1 - r)^2 + rho^2 = (1 + r)^2
    rho2 = 2
    r = Fraction(rho2, 4)
    low = Ball.from_radius(r, (r,) + (0,) * (d - 1))
    high = Ball.from_radius(r, (2 - r,) + (0,) * (d - 1))
    return a, b, _orthoplex_units(d), low, high


def orthoplex_join_packing(d: int, eps: float | None = None) -> Packing:
    """Exact packing of the ``(d+1)``-orthoplex graph in Q(sqrt 2).

    Ball order: the two half-spaces, ``2(d-1)`` unit balls at ``(1, +-sqrt2 e_i)``,
    then the axis balls of radius 1/2 tangent to ``x1 <= 0`` and ``x1 >= 2``.
    """
    a, b, units, low, high = _orthoplex_frame(d)
    return Packing.of(d, [a, b, *units, low, high], eps,
                      {"construction": "orthoplex-join", "axis_radius": low.radius})


def orthoplex_path_attempt(d: int, eps: float | None = None) -> Packing:
    """Try to pack ``orthoplex(d-1) * P_4``; always raises :class:`PackingError`.

    The fourth path ball is forced to touch the third, so the attempt yields
    the orthoplex join instead (attached to the error as ``result``).
    """
    eps = resolve_tolerance(eps)
    a, b, units, low, high = _orthoplex_frame(d)
    base = [a, b, *units, low]
    idx = len(base)
    for u, ball in enumerate(base):
        c = contact(ball, high, eps)
        if not c.admissible:
            raise OverlapError(f"path ball is {c.kind.value} with ball {u}", (u, idx),
                               "overlap", c.kind.value)
        if c.tangent and u in (0, idx - 1):
            raise PackingError(f"fourth path ball is forced to touch ball {u}", (u, idx),
                               "extra-tangency", c.kind.value,
                               result=orthoplex_join_packing(d, eps))
    return Packing.of(d, [*base, high], eps)


def detect_hexlet(p: Packing, limit: int = 10**5) -> list[tuple]:
    """Soddy hexlets in a 3-dimensional packing as sorted 9-tuples of ball indices.

    A hit is a tangent triangle whose common neighbours contain an induced
    6-cycle.
    """
    if p.d != 3:
        raise UnsupportedDimension("hexlet detection is defined for d = 3")
    g = p.graph
    from .graphs import cliques_of_size

    hits = set()
    for tri in cliques_of_size(g, 3):
        common = sorted(g.common_neighbors(tri))
        if len(common) < 6:
            continue
        for k, six in enumerate(itertools.combinations(common, 6)):
            if k >= limit:
                raise RuntimeError("too many candidate 6-cycles")
            if _is_induced_cycle(g, six):
                hits.add(tuple(sorted((*tri, *six))))
    return sorted(hits)


def _is_induced_cycle(g: Graph, vertices: Sequence[int]) -> bool:
    vs = set(vertices)
    nbrs = {v: g.neighbors(v) & vs for v in vs}
    if any(len(n) != 2 for n in nbrs.values()):
        return False
    start = next(iter(vs))
    seen, stack = {start}, [start]
    while stack:
        for u in nbrs[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen == vs


def min_tangent_radius(d: int) -> float:
    """Lower bound on the radius of a ball tangent to ``d`` pairwise tangent unit balls."""
    if d < 3:
        raise ValueError("the bound needs d >= 3")
    return (d - 2) / (d + math.sqrt(2 * d * d - 2 * d))
