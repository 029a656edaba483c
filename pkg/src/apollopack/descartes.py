"""Descartes configurations, their quadratic form, replacement and generator matrices.

Ball indices ``i`` passed to :func:`replace` and :func:`generator_matrix` are
1-based, matching the generator names ``R_1 .. R_{d+2}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import scalar
from .geometry import Ball, ContactKind, ball_from_ccv, contact, curvature_center
from .scalar import Surd, resolve_tolerance


@dataclass(frozen=True)
class DescartesConfiguration:
    d: int
    balls: tuple

    def __post_init__(self):
        object.__setattr__(self, "balls", tuple(self.balls))
        if self.d < 2:
            raise ValueError("Descartes configurations need d >= 2")
        if len(self.balls) != self.d + 2:
            raise ValueError(f"expected {self.d + 2} balls, got {len(self.balls)}")
        if any(b.dim != self.d for b in self.balls):
            raise ValueError("ball dimension does not match the configuration")

    @property
    def matrix(self) -> np.ndarray:
        """Curvature-center matrix, one row per ball (object dtype keeps exact entries)."""
        return curvature_center_matrix(self.balls)

    @property
    def curvatures(self) -> tuple:
        return tuple(b.curvature for b in self.balls)

    def same_balls(self, other: DescartesConfiguration, eps: float | None = None) -> bool:
        """Unordered comparison of the two ball sets."""
        from .geometry import balls_close

        if self.d != other.d:
            return False
        unmatched = list(other.balls)
        for b in self.balls:
            for j, c in enumerate(unmatched):
                if balls_close(b, c, eps):
                    del unmatched[j]
                    break
            else:
                return False
        return True


@dataclass(frozen=True)
class ValidationReport:
    eq1_residual: object
    eq2_residual: object
    bad_pairs: tuple = field(default_factory=tuple)
    tolerance: float = scalar.DEFAULT_TOLERANCE

    @property
    def valid(self) -> bool:
        return (not self.bad_pairs
                and float(self.eq1_residual) <= self.tolerance
                and float(self.eq2_residual) <= self.tolerance)

    def __bool__(self):
        return self.valid


def curvature_center_matrix(balls: Sequence[Ball]) -> np.ndarray:
    return np.array([curvature_center(b) for b in balls], dtype=object)


def q_matrix(d: int) -> np.ndarray:
    """``I - (1/d) e e^T`` of size ``d+2`` with rational entries."""
    if d < 2:
        raise ValueError("d must be at least 2")
    n = d + 2
    q = np.full((n, n), Fraction(-1, d), dtype=object)
    for i in range(n):
        q[i, i] = 1 - Fraction(1, d)
    return q


def _max_abs(values) -> object:
    best = 0
    for v in values:
        a = abs(v)
        if a > best:
            best = a
    return best


def validate(config: DescartesConfiguration, eps: float | None = None) -> ValidationReport:
    """Residuals of the curvature relation and the matrix relation, plus non-tangent pairs."""
    eps = resolve_tolerance(eps)
    d = config.d
    ks = config.curvatures
    sq = sum(k * k for k in ks)
    total = sum(ks)
    eq1 = abs(sq - Fraction(1, d) * total * total) / (1 + sq)
    m = config.matrix
    lhs = m.T.dot(q_matrix(d)).dot(m)
    target = np.zeros((d + 1, d + 1), dtype=object)
    for i in range(1, d + 1):
        target[i, i] = 2
    eq2 = _max_abs((lhs - target).ravel())
    bad = []
    for i, j in itertools.combinations(range(d + 2), 2):
        c = contact(config.balls[i], config.balls[j], eps)
        if c.kind is not ContactKind.TANGENT:
            bad.append((i, j, c.kind.value))
    return ValidationReport(eq1, eq2, tuple(bad), eps)


def _simplex_vertices(k: int, exact: bool) -> list[list]:
    """Vertices of a regular simplex with edge 2 in R^k, centred at the origin."""
    pts = [[1], [-1]] if not exact else [[Fraction(1)], [Fraction(-1)]]
    rho2 = 1
    for dim in range(2, k + 1):
        t2 = Fraction(4 - rho2) / (dim + 1) ** 2 if exact else (4.0 - rho2) / (dim + 1) ** 2
        if exact:
            try:
                t = Surd.sqrt(t2, 3)
            except ValueError:
                raise ValueError(f"no exact regular simplex coordinates in dimension {k}") from None
        else:
            t = t2 ** 0.5
        pts = [p + [t] for p in pts] + [[0] * (dim - 1) + [-dim * t]]
        rho2 = dim * dim * t2
    return pts


def canonical_configuration(d: int, exact: bool | None = None) -> DescartesConfiguration:
    """Half-spaces ``x1 <= 0`` and ``x1 >= 2`` plus ``d`` unit balls centred at height 1.

    The unit-ball centers form a regular simplex of edge 2 in the plane ``x1 = 1``.
    ``exact`` defaults to True for ``d <= 3`` (coordinates lie in Q(sqrt 3)).
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    if exact is None:
        exact = d <= 3
    if exact and d > 3:
        raise ValueError("exact coordinates are only available for d <= 3")
    zero, one, two = (0, 1, 2) if exact else (0.0, 1.0, 2.0)
    e1 = [one] + [zero] * (d - 1)
    a = Ball(curvature=0, normal=tuple(-x for x in e1), offset=zero)
    b = Ball(curvature=0, normal=tuple(e1), offset=two)
    units = []
    for p in _simplex_vertices(d - 1, exact):
        if exact:
            p = [Surd(x) if not isinstance(x, Surd) else x for x in p]
        units.append(Ball(curvature=one, center=(one, *p)))
    return DescartesConfiguration(d, (a, b, *units))


def _coefficient(d: int, exact: bool):
    return Fraction(2, d - 1) if exact else 2.0 / (d - 1)


def replace_row(rows: Sequence[Sequence], d: int, i: int) -> tuple:
    """New curvature-center row when ball ``i`` (1-based) is swapped out."""
    idx = i - 1
    exact = all(scalar.all_exact(r) for r in rows)
    coef = _coefficient(d, exact)
    width = len(rows[0])
    acc = [0] * width
    for j, row in enumerate(rows):
        if j != idx:
            acc = [x + y for x, y in zip(acc, row)]
    return tuple(coef * x - y for x, y in zip(acc, rows[idx]))


def _halfspace_from_row(row, retained: Sequence[Ball], eps: float) -> Ball:
    normal = tuple(row[1:])
    offsets = []
    for b in retained:
        if b.is_halfspace:
            continue
        # tangent from outside: <c, n> = offset - r
        offsets.append(sum(c * n for c, n in zip(b.center, normal)) + b.radius)
    if not offsets:
        raise ValueError("cannot recover a half-space offset without a finite neighbour")
    offset = offsets[0]
    for other in offsets[1:]:
        if scalar.sign(other - offset, eps) != 0:
            raise ValueError(f"inconsistent half-space offsets {offset} vs {other}")
    return Ball(curvature=0, normal=normal, offset=offset)


def replace(config: DescartesConfiguration, i: int,
            eps: float | None = None) -> tuple[DescartesConfiguration, Ball]:
    """Swap ball ``i`` (1-based) for the other ball tangent to the remaining ``d+1``."""
    d = config.d
    if not 1 <= i <= d + 2:
        raise IndexError(f"ball index {i} out of range 1..{d + 2}")
    eps = resolve_tolerance(eps)
    rows = [curvature_center(b) for b in config.balls]
    new_row = replace_row(rows, d, i)
    retained = [b for j, b in enumerate(config.balls) if j != i - 1]
    if scalar.sign(new_row[0], eps) == 0:
        k0 = 0 if scalar.is_exact(new_row[0]) else 0.0
        new_ball = _halfspace_from_row((k0, *new_row[1:]), retained, eps)
    else:
        new_ball = ball_from_ccv(new_row)
    balls = list(config.balls)
    balls[i - 1] = new_ball
    return DescartesConfiguration(d, tuple(balls)), new_ball


def generator_matrix(d: int, i: int) -> np.ndarray:
    """``R_i = I + (2/(d-1)) e_i e^T - (2d/(d-1)) e_i e_i^T`` with rational entries."""
    if d < 2:
        raise ValueError("d must be at least 2")
    n = d + 2
    if not 1 <= i <= n:
        raise IndexError(f"generator index {i} out of range 1..{n}")
    coef = Fraction(2, d - 1)
    if coef.denominator == 1:
        coef = int(coef)
    r = np.zeros((n, n), dtype=object)
    for k in range(n):
        r[k, k] = 1
    r[i - 1, :] = coef
    r[i - 1, i - 1] = -1
    return r
