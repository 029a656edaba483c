"""Balls in extended Euclidean space, curvature-center coordinates, and contact.

A ball is either *finite* (curvature ``k != 0`` and a center; ``k < 0`` is the
closed exterior of the ball of radius ``1/|k|``) or a *half-space*
``{x : <x, normal> >= offset}`` together with the point at infinity.
Half-space normals point into the half-space, so ``{x1 <= 0}`` has normal
``(-1, 0, ...)`` and offset ``0``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import scalar
from .scalar import resolve_tolerance


class ContactKind(str, enum.Enum):
    TANGENT = "tangent"
    DISJOINT = "disjoint"
    OVERLAPPING = "overlapping"
    NESTED = "nested"
    BOUNDARY_SHARING = "boundary-sharing"


@dataclass(frozen=True)
class Contact:
    """Contact class of two balls; ``point`` is ``None`` for a tangency at infinity."""

    kind: ContactKind
    point: tuple | None = None

    @property
    def tangent(self) -> bool:
        return self.kind is ContactKind.TANGENT

    @property
    def at_infinity(self) -> bool:
        return self.tangent and self.point is None

    @property
    def admissible(self) -> bool:
        """True when the pair may coexist in a packing (disjoint interiors)."""
        return self.kind in (ContactKind.TANGENT, ContactKind.DISJOINT)


@dataclass(frozen=True)
class Ball:
    curvature: object
    center: tuple | None = None
    normal: tuple | None = None
    offset: object = None

    def __post_init__(self):
        if self.normal is None:
            if self.center is None or not self.curvature:
                raise ValueError("finite ball needs non-zero curvature and a center")
            object.__setattr__(self, "center", tuple(self.center))
        else:
            if self.curvature:
                raise ValueError("half-space must have curvature 0")
            if self.offset is None:
                raise ValueError("half-space needs an offset")
            object.__setattr__(self, "normal", tuple(self.normal))

    @classmethod
    def finite(cls, curvature, center: Sequence) -> Ball:
        return cls(curvature=curvature, center=tuple(center))

    @classmethod
    def from_radius(cls, radius, center: Sequence) -> Ball:
        return cls(curvature=_div(1, radius), center=tuple(center))

    @classmethod
    def halfspace(cls, normal: Sequence, offset, eps: float | None = None) -> Ball:
        normal = tuple(normal)
        n2 = _dot(normal, normal)
        if scalar.sign(n2 - 1, resolve_tolerance(eps)) != 0:
            raise ValueError(f"half-space normal must be a unit vector, |n|^2 = {n2}")
        return cls(curvature=0, normal=normal, offset=offset)

    @property
    def dim(self) -> int:
        return len(self.normal if self.is_halfspace else self.center)

    @property
    def is_halfspace(self) -> bool:
        return self.normal is not None

    @property
    def radius(self):
        """``1/|curvature|``; infinite for half-spaces."""
        if self.is_halfspace:
            return float("inf")
        return abs(_div(1, self.curvature))

    @property
    def is_exact(self) -> bool:
        values = [self.curvature, *(self.center or ()), *(self.normal or ())]
        if self.is_halfspace:
            values.append(self.offset)
        return scalar.all_exact(values)

    def to_float(self) -> Ball:
        if self.is_halfspace:
            return Ball(curvature=0, normal=tuple(float(x) for x in self.normal),
                        offset=float(self.offset))
        return Ball(curvature=float(self.curvature), center=tuple(float(x) for x in self.center))

    def __repr__(self):
        if self.is_halfspace:
            return f"Ball(normal={_fmt(self.normal)}, offset={self.offset})"
        return f"Ball(curvature={self.curvature}, center={_fmt(self.center)})"


def _fmt(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


def _dot(u, v):
    total = 0
    for a, b in zip(u, v):
        total = total + a * b
    return total


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _scale(s, v):
    return tuple(s * a for a in v)


def _div(x, y):
    if scalar.is_exact(x) and scalar.is_exact(y):
        if isinstance(x, scalar.Surd) or isinstance(y, scalar.Surd):
            return x / y
        return Fraction(x) / Fraction(y)
    return float(x) / float(y)


def _cmp_length(d2, target, eps) -> int:
    """Sign of ``sqrt(d2) - target``."""
    if scalar.is_exact(d2) and scalar.is_exact(target):
        if target < 0:
            return 1
        return scalar.sign(d2 - target * target)
    diff = scalar.sqrt(float(d2)) - float(target)
    if abs(diff) <= eps:
        return 0
    return 1 if diff > 0 else -1


def _cmp(x, y, eps) -> int:
    return scalar.sign(x - y, eps)


def _same_vector(u, v, eps) -> bool:
    return all(scalar.sign(a - b, eps) == 0 for a, b in zip(u, v))


def contact(b1: Ball, b2: Ball, eps: float | None = None) -> Contact:
    """Classify how two balls meet.

    Exact inputs are decided exactly; otherwise lengths are compared with the
    absolute tolerance ``eps``.
    """
    if b1.dim != b2.dim:
        raise ValueError(f"dimension mismatch: {b1.dim} vs {b2.dim}")
    eps = resolve_tolerance(eps)
    if b1.is_halfspace and b2.is_halfspace:
        return _contact_hh(b1, b2, eps)
    if b1.is_halfspace:
        return _contact_fh(b2, b1, eps)
    if b2.is_halfspace:
        return _contact_fh(b1, b2, eps)
    if b1.curvature > 0 and b2.curvature > 0:
        return _contact_bb(b1, b2, eps)
    if b1.curvature > 0:
        return _contact_be(b1, b2, eps)
    if b2.curvature > 0:
        return _contact_be(b2, b1, eps)
    return _contact_ee(b1, b2, eps)


def _contact_hh(h1: Ball, h2: Ball, eps) -> Contact:
    if _same_vector(h1.normal, _scale(-1, h2.normal), eps):
        s = _cmp(h1.offset + h2.offset, 0, eps)
        if s > 0:
            return Contact(ContactKind.TANGENT, None)
        if s == 0:
            return Contact(ContactKind.BOUNDARY_SHARING)
        return Contact(ContactKind.OVERLAPPING)
    if _same_vector(h1.normal, h2.normal, eps):
        return Contact(ContactKind.NESTED)
    return Contact(ContactKind.OVERLAPPING)


def _contact_fh(b: Ball, h: Ball, eps) -> Contact:
    # signed depth of the center inside the half-space
    depth = _dot(b.center, h.normal) - h.offset
    r = b.radius
    if b.curvature > 0:
        s = _cmp(depth, -r, eps)
        if s < 0:
            return Contact(ContactKind.DISJOINT)
        if s == 0:
            return Contact(ContactKind.TANGENT, _add(b.center, _scale(r, h.normal)))
        if _cmp(depth, r, eps) >= 0:
            return Contact(ContactKind.NESTED)
        return Contact(ContactKind.OVERLAPPING)
    # exterior of a ball against a half-space: both contain infinity
    if _cmp(depth, -r, eps) <= 0:
        return Contact(ContactKind.NESTED)
    return Contact(ContactKind.OVERLAPPING)


def _contact_bb(b1: Ball, b2: Ball, eps) -> Contact:
    diff = _sub(b2.center, b1.center)
    d2 = _dot(diff, diff)
    r1, r2 = b1.radius, b2.radius
    s = _cmp_length(d2, r1 + r2, eps)
    if s > 0:
        return Contact(ContactKind.DISJOINT)
    if s == 0:
        t = _div(r1, r1 + r2)
        return Contact(ContactKind.TANGENT, _add(b1.center, _scale(t, diff)))
    if _cmp_length(d2, abs(r1 - r2), eps) <= 0:
        return Contact(ContactKind.NESTED)
    return Contact(ContactKind.OVERLAPPING)


def _contact_be(b: Ball, e: Ball, eps) -> Contact:
    # b is a closed ball, e the closed exterior of an open ball of radius rho
    diff = _sub(b.center, e.center)
    d2 = _dot(diff, diff)
    r, rho = b.radius, e.radius
    if _cmp_length(d2, 0, eps) == 0 and _cmp(r, rho, eps) == 0:
        return Contact(ContactKind.BOUNDARY_SHARING)
    s = _cmp_length(d2, rho - r, eps)
    if s < 0:
        return Contact(ContactKind.DISJOINT)
    if s == 0:
        t = _div(rho, rho - r)
        return Contact(ContactKind.TANGENT, _add(e.center, _scale(t, diff)))
    if _cmp_length(d2, r + rho, eps) >= 0:
        return Contact(ContactKind.NESTED)
    return Contact(ContactKind.OVERLAPPING)


def _contact_ee(e1: Ball, e2: Ball, eps) -> Contact:
    diff = _sub(e2.center, e1.center)
    d2 = _dot(diff, diff)
    r1, r2 = e1.radius, e2.radius
    if _cmp_length(d2, abs(r1 - r2), eps) <= 0:
        return Contact(ContactKind.NESTED)
    return Contact(ContactKind.OVERLAPPING)


def curvature_center(b: Ball) -> tuple:
    """Curvature-center coordinates ``(k, k*c)``, or ``(0, normal)`` for a half-space."""
    if b.is_halfspace:
        return (0, *b.normal)
    k = b.curvature
    return (k, *(k * c for c in b.center))


def ball_from_ccv(m: Sequence) -> Ball:
    """Inverse of :func:`curvature_center` for non-zero curvature."""
    k = m[0]
    if not k:
        raise ValueError("curvature 0: a half-space offset cannot be recovered from (0, n)")
    return Ball(curvature=k, center=tuple(_div(x, k) for x in m[1:]))


def invert_in_sphere(b: Ball, center: Sequence, radius) -> Ball:
    """Image of ``b`` under inversion in the sphere ``|x - center| = radius``."""
    if not radius > 0:
        raise ValueError("inversion radius must be positive")
    p = tuple(center)
    if len(p) != b.dim:
        raise ValueError("inversion center has the wrong dimension")
    R2 = radius * radius
    if b.is_halfspace:
        s = _dot(p, b.normal) - b.offset
        if scalar.sign(s) == 0:
            return b
        # boundary plane maps to a sphere through p
        c = _sub(p, _scale(_div(R2, 2 * s), b.normal))
        r = abs(_div(R2, 2 * s))
        k = _div(1, r)
        return Ball(curvature=k if s < 0 else -k, center=c)
    diff = _sub(b.center, p)
    r = b.radius
    delta = _dot(diff, diff) - r * r
    if scalar.sign(delta) == 0:
        # boundary passes through p: image is a half-space
        u = _scale(_div(1, r), diff)
        offset = _dot(p, u) + _div(R2, 2 * r)
        if b.curvature > 0:
            return Ball(curvature=0, normal=u, offset=offset)
        return Ball(curvature=0, normal=_scale(-1, u), offset=-offset)
    c = _add(p, _scale(_div(R2, delta), diff))
    r_img = abs(_div(R2 * r, delta))
    k = _div(1, r_img)
    outside = delta > 0
    if b.curvature > 0:
        return Ball(curvature=k if outside else -k, center=c)
    return Ball(curvature=-k if outside else k, center=c)


def balls_close(a: Ball, b: Ball, eps: float | None = None) -> bool:
    """Equality of balls, exact for exact inputs and within ``eps`` otherwise."""
    eps = resolve_tolerance(eps)
    if a.is_halfspace != b.is_halfspace or a.dim != b.dim:
        return False
    if a.is_halfspace:
        return _same_vector(a.normal, b.normal, eps) and _cmp(a.offset, b.offset, eps) == 0
    return (_cmp(a.curvature, b.curvature, eps) == 0
            and _same_vector(a.center, b.center, eps))
