"""Scalar backends: exact elements of a real quadratic field, and tolerant floats.

Exact values are :class:`Surd` instances ``a + b*sqrt(n)`` with rational ``a``
and ``b``.  Plain ``int`` and ``Fraction`` values are exact as well.  Anything
else (``float``, numpy floats) goes through the float backend, where every
comparison uses an absolute tolerance.
"""

from __future__ import annotations

import math
import numbers
import os
from fractions import Fraction

DEFAULT_TOLERANCE = 1e-9
TOLERANCE_ENV = "APOLLO_TOLERANCE"


def default_tolerance() -> float:
    """Tolerance used when callers pass ``eps=None``; honours ``APOLLO_TOLERANCE``."""
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return DEFAULT_TOLERANCE
    value = float(raw)
    if not value > 0:
        raise ValueError(f"{TOLERANCE_ENV} must be positive, got {raw!r}")
    return value


def resolve_tolerance(eps: float | None) -> float:
    return default_tolerance() if eps is None else float(eps)


class Surd:
    """The number ``a + b*sqrt(n)`` for rationals ``a, b`` and squarefree ``n > 1``."""

    __slots__ = ("a", "b", "n")

    def __init__(self, a=0, b=0, n: int = 3):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.n = int(n)
        if self.n < 2:
            raise ValueError("radicand must be an integer >= 2")

    @classmethod
    def sqrt(cls, q, n: int = 3) -> Surd:
        """``sqrt(q)`` as an element of Q(sqrt(n)); raises if it is not one."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        rational = _rational_sqrt(q)
        if rational is not None:
            return cls(rational, 0, n)
        coeff = _rational_sqrt(q / n)
        if coeff is None:
            raise ValueError(f"sqrt({q}) is not in Q(sqrt({n}))")
        return cls(0, coeff, n)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.n != self.n and other.b and self.b:
                raise ValueError(f"cannot mix Q(sqrt({self.n})) and Q(sqrt({other.n}))")
            return other
        if isinstance(other, (int, Fraction)):
            return Surd(other, 0, self.n)
        return None

    def _field(self, other: Surd) -> int:
        return self.n if self.b or not other.b else other.n

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return float(self) + other if isinstance(other, numbers.Real) else NotImplemented
        return Surd(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.n)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return float(self) - other if isinstance(other, numbers.Real) else NotImplemented
        return Surd(self.a - o.a, self.b - o.b, self._field(o))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return float(self) * other if isinstance(other, numbers.Real) else NotImplemented
        n = self._field(o)
        return Surd(self.a * o.a + n * self.b * o.b, self.a * o.b + self.b * o.a, n)

    __rmul__ = __mul__

    def conjugate(self) -> Surd:
        return Surd(self.a, -self.b, self.n)

    def norm(self) -> Fraction:
        return self.a * self.a - self.n * self.b * self.b

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return float(self) / other if isinstance(other, numbers.Real) else NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero in quadratic field")
        inv_norm = o.norm()
        num = self * o.conjugate()
        return Surd(num.a / inv_norm, num.b / inv_norm, num.n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / float(self) if isinstance(other, numbers.Real) else NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return float(self) ** k
        if k < 0:
            return 1 / self ** (-k)
        result = Surd(1, 0, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self < 0 else self

    # -- comparison -------------------------------------------------------
    def sign(self) -> int:
        sa, sb = _fsign(self.a), _fsign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with n b^2
        diff = self.a * self.a - self.n * self.b * self.b
        return sa * _fsign(diff)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, float) else None
        if o is None:
            if isinstance(other, numbers.Real):
                return float(self) == other
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.n))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            f = float(self)
            return (f > other) - (f < other)
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- conversion -------------------------------------------------------
    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.n)

    def is_rational(self) -> bool:
        return not self.b

    def is_integer(self) -> bool:
        return not self.b and self.a.denominator == 1

    def __repr__(self):
        return f"Surd({self.a}, {self.b}, n={self.n})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt({self.n})"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.n})"


def _fsign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    p, r = q.numerator, q.denominator
    sp, sr = math.isqrt(p), math.isqrt(r)
    if sp * sp == p and sr * sr == r:
        return Fraction(sp, sr)
    return None


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Surd)) and not isinstance(x, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def sign(x, eps: float | None = None) -> int:
    """Sign of ``x``; exact values are decided exactly, floats within ``eps``."""
    if isinstance(x, Surd):
        return x.sign()
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    eps = resolve_tolerance(eps)
    x = float(x)
    if abs(x) <= eps:
        return 0
    return 1 if x > 0 else -1


def sqrt(x):
    """Square root that stays exact when the result lies in the same field."""
    if isinstance(x, Surd):
        if x.is_rational():
            try:
                return Surd.sqrt(x.a, x.n)
            except ValueError:
                pass
        return math.sqrt(float(x))
    if isinstance(x, (int, Fraction)):
        r = _rational_sqrt(Fraction(x))
        if r is not None:
            return r
        return math.sqrt(x)
    return math.sqrt(max(float(x), 0.0))


def to_float(x) -> float:
    return float(x)


def is_integral(x) -> bool:
    if isinstance(x, Surd):
        return x.is_integer()
    if isinstance(x, Fraction):
        return x.denominator == 1
    if isinstance(x, int):
        return True
    return False
