"""Words over the Apollonian group generators R_1 .. R_{d+2}.

A word is written ``U = U_n ... U_2 U_1``: ``letters[-1]`` acts first, and
the matrix of the word is the product of the generator matrices in written
order.  Reducedness is decided in the Coxeter group with all ``m_ij = 3``
(the 3-dimensional Apollonian group) through its root system.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import scalar
from .descartes import (DescartesConfiguration, canonical_configuration,
                        curvature_center_matrix, generator_matrix, replace, validate)
from .geometry import Ball, ContactKind, contact


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    d: int
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        for x in letters:
            if not 1 <= x <= self.d + 2:
                raise ValueError(f"letter R{x} out of range for d={self.d}")

    @classmethod
    def parse(cls, text: str, d: int = 3) -> Word:
        """Parse ``"R2 R1"``, ``"2 1"`` or ``"2,1"``; empty text is the identity."""
        tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
        letters = []
        for t in tokens:
            t = t.upper().lstrip("R")
            if not t.isdigit():
                raise ValueError(f"bad letter {t!r} in word {text!r}")
            letters.append(int(t))
        return cls(d, tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(str(x) for x in self.letters)

    def applied_order(self) -> tuple:
        """Letters in the order they act (rightmost first)."""
        return self.letters[::-1]

    def then(self, letter: int) -> Word:
        """The word ``R_letter U``: ``letter`` acts after everything in ``self``."""
        return Word(self.d, (letter, *self.letters))


def matrix_of(u: Word) -> np.ndarray:
    """Exact product ``R_{U_n} ... R_{U_1}``."""
    n = u.d + 2
    m = np.zeros((n, n), dtype=object)
    for k in range(n):
        m[k, k] = 1
    for letter in u.letters:
        m = m.dot(generator_matrix(u.d, letter))
    return m


def _require_d3(u: Word):
    if u.d != 3:
        raise UnsupportedDimension("word reduction is only defined for d = 3")


def _reflect(root: list, i: int) -> list:
    # s_i(v) = v - 2B(a_i, v) a_i with B(a_i, a_i) = 1, B(a_i, a_j) = -1/2
    coeff = 2 * root[i] - (sum(root) - root[i])
    out = list(root)
    out[i] -= coeff
    return out


def _first_violation(letters: Sequence[int], n: int) -> tuple[int, int] | None:
    """First ``j`` with ``letters[:j+1]`` non-reduced, and the ``i < j`` to delete with it."""
    for j in range(len(letters)):
        # walk a_j's simple root back through the prefix; hitting a_i means i, j cancel
        v = [0] * n
        v[letters[j] - 1] = 1
        for i in range(j - 1, -1, -1):
            a = letters[i] - 1
            if v[a] == 1 and sum(v) == 1:
                return j, i
            v = _reflect(v, a)
    return None


def is_reduced(u: Word) -> tuple[bool, int | None]:
    """Whether ``u`` has minimal length; otherwise also the 0-based violation position."""
    _require_d3(u)
    hit = _first_violation(u.letters, u.d + 2)
    if hit is None:
        return True, None
    return False, hit[0]


def simplify(u: Word) -> Word:
    """Equivalent reduced word, obtained by deleting cancelling letter pairs."""
    _require_d3(u)
    letters = list(u.letters)
    while True:
        hit = _first_violation(letters, u.d + 2)
        if hit is None:
            return Word(u.d, tuple(letters))
        j, i = hit
        del letters[j]
        del letters[i]


def weighted_sums(u: Word, w: Sequence) -> tuple[list, object]:
    """Weighted row sums ``sigma_i = e_i^T U w`` and weighted mass ``Sigma = e^T U w``."""
    if len(w) != u.d + 2:
        raise ValueError(f"weight vector must have length {u.d + 2}")
    sigma = list(matrix_of(u).dot(np.array(list(w), dtype=object)))
    return sigma, sum(sigma)


@dataclass
class RecurrenceReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def check_recurrences(u: Word, w: Sequence, j: int) -> RecurrenceReport:
    """Compare the row-sum and mass recurrences against direct exact products."""
    _require_d3(u)
    n = u.d + 2
    sig_u, mass_u = weighted_sums(u, w)
    sig_ju, mass_ju = weighted_sums(u.then(j), w)
    report = RecurrenceReport()

    def check(name, lhs, rhs):
        if lhs != rhs:
            report.violations.append((name, lhs, rhs))

    for i in range(1, n + 1):
        if i == j:
            check(f"sigma_{i}(R_{j}U)", sig_ju[i - 1], mass_u - 2 * sig_u[i - 1])
        else:
            check(f"sigma_{i}(R_{j}U)", sig_ju[i - 1], sig_u[i - 1])
    check(f"Sigma(R_{j}U)", mass_ju, 2 * mass_u - 3 * sig_u[j - 1])

    def delta(word: Word, i: int):
        return weighted_sums(word.then(i), w)[1] - weighted_sums(word, w)[1]

    ju = u.then(j)
    for i in range(1, n + 1):
        lhs = delta(ju, i)
        if i == j:
            check(f"delta_{i}(R_{j}U)", lhs, -delta(u, i))
        else:
            check(f"delta_{i}(R_{j}U)", lhs, delta(u, i) + delta(u, j))
            check(f"delta_{i}(R_{j}U) = delta_{j}(R_{i}U)", lhs, delta(u.then(i), j))
            check(f"delta_{i}(R_{j}R_{i}U)", delta(u.then(i).then(j), i), delta(u, j))
    return report


@dataclass
class BallSequence:
    initial: DescartesConfiguration
    steps: list = field(default_factory=list)  # (step, replaced index, new ball)
    configurations: list = field(default_factory=list)

    @property
    def balls(self) -> list:
        return list(self.initial.balls) + [b for _, _, b in self.steps]

    @property
    def final(self) -> DescartesConfiguration:
        return self.configurations[-1] if self.configurations else self.initial


class SequenceError(RuntimeError):
    pass


def coxeter_sequence(u: Word, config0: DescartesConfiguration,
                     eps: float | None = None, check: bool = True) -> BallSequence:
    """Balls generated by applying the letters of ``u`` right to left."""
    if config0.d != u.d:
        raise ValueError("word and configuration dimensions differ")
    seq = BallSequence(config0)
    config = config0
    for step, letter in enumerate(u.applied_order(), start=1):
        config, ball = replace(config, letter, eps)
        if check:
            report = validate(config, eps)
            if not report.valid:
                raise SequenceError(f"configuration invalid after step {step}: {report}")
        seq.steps.append((step, letter, ball))
        seq.configurations.append(config)
    return seq


def sequence_matrices(u: Word, config0: DescartesConfiguration) -> list[np.ndarray]:
    """``matrix_of(prefix) . M_0`` for every applied prefix, for cross-checking."""
    m = config0.matrix
    out = []
    for letter in u.applied_order():
        m = generator_matrix(u.d, letter).dot(m)
        out.append(m)
    return out


@dataclass
class GeneratedBallReport:
    violations: list = field(default_factory=list)
    balls_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def check_generated_balls(u: Word) -> GeneratedBallReport:
    """Balls past the first five must have integral ``m2 > 1``, ``k >= 1`` and miss ``S_1``."""
    _require_d3(u)
    reduced, _ = is_reduced(u)
    if not reduced:
        raise ValueError(f"word {u} is not reduced")
    if not u.letters or u.letters[-1] != 1:
        raise ValueError("word must end with R1 (act with R1 first)")
    config0 = canonical_configuration(3, exact=True)
    seq = coxeter_sequence(u, config0, check=False)
    s1 = config0.balls[0]
    report = GeneratedBallReport()
    for step, _, ball in seq.steps:
        report.balls_checked += 1
        k = ball.curvature
        m2 = 0 if ball.is_halfspace else k * ball.center[0]
        if not (scalar.is_integral(k) and k >= 1):
            report.violations.append((step, "curvature", k))
        if not (scalar.is_integral(m2) and m2 > 1):
            report.violations.append((step, "m2", m2))
        c = contact(s1, ball)
        if c.kind is not ContactKind.DISJOINT:
            report.violations.append((step, "contact", c.kind.value))
    return report


def random_word(rng: random.Random, d: int, max_length: int, *, reduced: bool = False,
                ends_with: int | None = None, no_repeats: bool = True) -> Word:
    """Random word built letter by letter in acting order."""
    n = d + 2
    length = rng.randint(1 if ends_with else 0, max_length)
    letters: list[int] = []
    if ends_with is not None and length:
        letters.append(ends_with)
    while len(letters) < length:
        options = list(range(1, n + 1))
        rng.shuffle(options)
        for x in options:
            if no_repeats and letters and letters[0] == x:
                continue
            candidate = [x, *letters]
            if reduced and _first_violation(candidate, n) is not None:
                continue
            letters = candidate
            break
        else:
            break
    return Word(d, tuple(letters))


def random_words(seed: int, count: int, d: int, max_length: int, **kwargs) -> Iterable[Word]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_word(rng, d, max_length, **kwargs)
