"""The acceptance criteria as plain functions, shared by the test suite and the CLI."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import builder, descartes, graphs, lift, words
from .builder import PackingError


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    budget: float | None = None

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (budget {self.budget:g} s)" if self.budget else ""
        return f"[{status}] {self.number:2d}. {self.title}: {self.detail} [{self.seconds:.2f} s{budget}]"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(number: int, title: str, budget: float | None):
    def wrap(fn: Callable[..., tuple[bool, str]]):
        def run(**kwargs) -> CriterionResult:
            start = time.perf_counter()
            ok, detail = fn(**kwargs)
            elapsed = time.perf_counter() - start
            if budget is not None and elapsed > budget:
                ok = False
                detail += f"; over the {budget:g} s budget"
            return CriterionResult(number, title, ok, detail, elapsed, budget)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed(1, "Descartes identity", 1.0)
def descartes_identity() -> tuple[bool, str]:
    worst = 0.0
    for d in range(2, 9):
        report = descartes.validate(descartes.canonical_configuration(d))
        if not report.valid or float(report.eq1_residual) >= 1e-9:
            return False, f"d={d} invalid: {report}"
        worst = max(worst, float(report.eq1_residual))
    exact = descartes.validate(descartes.canonical_configuration(3, exact=True))
    if exact.eq1_residual != 0 or exact.eq2_residual != 0:
        return False, f"exact d=3 residuals {exact.eq1_residual}, {exact.eq2_residual}"
    return True, f"d=2..8 valid, worst eq1 residual {worst:.1e}, exact d=3 residual 0"


@_timed(2, "Coxeter presentation", 1.0)
def coxeter_presentation() -> tuple[bool, str]:
    identity = np.identity(5, dtype=object)
    r = {i: descartes.generator_matrix(3, i) for i in range(1, 6)}
    for i in r:
        if not (r[i].dot(r[i]) == identity).all():
            return False, f"R{i}^2 != I"
    pairs = 0
    for i, j in itertools.permutations(r, 2):
        rr = r[i].dot(r[j])
        if not (rr.dot(rr).dot(rr) == identity).all():
            return False, f"(R{i}R{j})^3 != I"
        pairs += 1
    return True, f"R_i^2 = I for 5 generators, (R_iR_j)^3 = I for {pairs} ordered pairs"


def _kd_pm_ok(d: int, m: int) -> bool:
    try:
        builder.canonical_kd_pm(d, m)
    except PackingError:
        return False
    return True


@_timed(3, "K_d * P_m table", 1.0)
def kd_pm_table() -> tuple[bool, str]:
    expect = {}
    for d in range(3, 9):
        for m in range(0, 5):
            expect[(d, m)] = True
    for d in (3, 4):
        expect[(d, 5)] = True
    for d in range(5, 9):
        expect[(d, 5)] = False
    for d in range(4, 9):
        expect[(d, 6)] = False
    wrong = [k for k, v in expect.items() if _kd_pm_ok(*k) != v]
    if wrong:
        return False, f"mismatched (d, m): {wrong}"
    hexlet = builder.canonical_kd_pm(3, 6)
    diam = hexlet.meta["diameters"]
    want = [Fraction(2, 3), Fraction(2, 3), Fraction(1, 3), Fraction(1, 3)]
    if not hexlet.meta.get("closed_chain") or diam != want or sum(diam) != 2:
        return False, f"(3,6) diameters {diam}"
    five = builder.canonical_kd_pm(3, 5).meta["diameters"]
    if sum(five) != Fraction(5, 3):
        return False, f"(3,5) diameter sum {sum(five)}"
    return True, (f"{len(expect)} cells agree; (3,5) sum 5/3; (3,6) closes the hexlet "
                  "with diameters 2/3, 2/3, 1/3, 1/3 summing to 2")


@dataclass
class CoherenceRun:
    graphs: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    builds: list = field(default_factory=list)  # Packing or PackingError
    seconds: float = 0.0

    @property
    def agreements(self) -> int:
        return sum(bool(v) == (not isinstance(b, PackingError))
                   for v, b in zip(self.verdicts, self.builds))

    @property
    def successes(self) -> list:
        return [b for b in self.builds if not isinstance(b, PackingError)]


_COHERENCE_CACHE: dict[int, CoherenceRun] = {}


def coherence_run(max_vertices: int = 9) -> CoherenceRun:
    """Decide and build every stacked 4-polytopal graph up to ``max_vertices`` vertices."""
    if max_vertices in _COHERENCE_CACHE:
        return _COHERENCE_CACHE[max_vertices]
    run = CoherenceRun()
    start = time.perf_counter()
    for sp in graphs.enumerate_stack_programs(4, max_vertices):
        g = graphs.graph_of_stack_program(sp)
        run.graphs.append(g)
        run.verdicts.append(graphs.decide_packable_stacked4(g))
        try:
            packing, _ = builder.build_from_graph(g, 3)
            run.builds.append(packing)
        except PackingError as exc:
            run.builds.append(exc)
    run.seconds = time.perf_counter() - start
    _COHERENCE_CACHE[max_vertices] = run
    return run


@_timed(4, "Decide/build coherence", 60.0)
def decide_build_coherence(max_vertices: int = 9) -> tuple[bool, str]:
    run = coherence_run(max_vertices)
    total = len(run.graphs)
    ok = total > 0 and run.agreements == total
    bad = total - len(run.successes)
    return ok, (f"{run.agreements}/{total} stacked 4-polytopal graphs agree "
                f"({bad} not packable)")


@_timed(5, "Weighted mass and recurrences", 5.0)
def weighted_mass(count: int = 1000, seed: int = 0) -> tuple[bool, str]:
    w = (-1, 1, 1, 1, 1)

    def mass(text):
        return words.weighted_sums(words.Word.parse(text), w)[1]

    if mass("") != 3 or mass("1") != 9 or any(mass(str(j)) != 3 for j in range(2, 6)):
        return False, "base masses differ from 3, 9, 3"
    rng = random.Random(seed)
    violations = 0
    for _ in range(count):
        u = words.random_word(rng, 3, 12, no_repeats=False)
        j = rng.randint(1, 5)
        violations += len(words.check_recurrences(u, w, j).violations)
    return violations == 0, f"masses 3, 9, 3 exact; {count} random words, {violations} violations"


@_timed(6, "Generated-ball empirics", 10.0)
def generated_ball_empirics(count: int = 500, seed: int = 0) -> tuple[bool, str]:
    checked = bad = 0
    for u in words.random_words(seed, count, 3, 10, reduced=True, ends_with=1):
        report = words.check_generated_balls(u)
        checked += report.balls_checked
        bad += len(report.violations)
    return bad == 0, f"{count} reduced words, {checked} balls beyond the first five, {bad} violations"


@_timed(7, "Hexlet equivalence", None)
def hexlet_equivalence(max_vertices: int = 9) -> tuple[bool, str]:
    hits = builder.detect_hexlet(builder.soddy_hexlet())
    if len(hits) != 1:
        return False, f"{len(hits)} hexlets in the Soddy packing"
    run = coherence_run(max_vertices)
    for packing in run.successes:
        free = not builder.detect_hexlet(packing)
        if not free:
            return False, f"hexlet inside build of {packing.graph}"
        if free != graphs.is_k_tree(packing.graph, 4)[0]:
            return False, f"hexlet-free but not a 4-tree: {packing.graph}"
    return True, f"1 hexlet in the Soddy packing, 0 in {len(run.successes)} builds, all 4-trees"


@_timed(8, "Orthoplex joins", None)
def orthoplex_joins() -> tuple[bool, str]:
    for d in range(3, 7):
        p = builder.orthoplex_join_packing(d)
        if p.meta["axis_radius"] != Fraction(1, 2):
            return False, f"d={d} axis radius {p.meta['axis_radius']}"
        if not graphs.is_isomorphic(p.graph, graphs.orthoplex(d + 1)):
            return False, f"d={d} tangency graph is not the {d + 1}-orthoplex"
        try:
            builder.orthoplex_path_attempt(d)
        except PackingError as exc:
            if exc.pair is None:
                return False, f"d={d} path attempt failed without a witness"
        else:
            return False, f"d={d} path attempt succeeded"
    return True, "d=3..6 exact packings with axis radius 1/2; P4 extension fails with a witness"


@_timed(9, "Lift and stress", 60.0)
def lift_and_stress(max_vertices: int = 9, tol: float = 1e-8) -> tuple[bool, str]:
    run = coherence_run(max_vertices)
    worst = 0.0
    for packing in run.successes:
        result = lift.lift_packing(packing, tol)
        if not result.report.ok:
            return False, f"segment check failed on {packing.graph}"
        if result.stress_dim != 0:
            return False, f"stress dimension {result.stress_dim} on {packing.graph}"
        if min(float(v.dot(v)) for v in result.vertices) <= 1:
            return False, "polar vertex inside the unit ball"
        worst = max([worst] + [abs(pr.min_norm2 - 1) for pr in result.report.pairs if pr.edge])
    return True, (f"{len(run.successes)} builds stress-free, worst edge residual {worst:.1e}; "
                  f"includes {run.seconds:.2f} s of building")


@_timed(10, "Kissing screen", None)
def kissing_screen() -> tuple[bool, str]:
    k3 = graphs.kissing_screen(graphs.join(graphs.complete(3), graphs.complete(13)), 4)
    k5 = graphs.kissing_screen(graphs.join(graphs.complete(5), graphs.empty_graph(3)), 4)
    k6 = graphs.kissing_screen(graphs.complete(6), 4)
    hit3 = any(v.clique == (0, 1, 2) and v.bound == 12 for v in k3)
    hit5 = any(v.clique == (0, 1, 2, 3, 4) and v.bound == 2 for v in k5)
    ok = hit3 and hit5 and not k6
    return ok, f"K3*K13 flagged={hit3}, K5*co-K3 flagged={hit5}, K6 clean={not k6}"


CRITERIA = (descartes_identity, coxeter_presentation, kd_pm_table, decide_build_coherence,
            weighted_mass, generated_ball_empirics, hexlet_equivalence, orthoplex_joins,
            lift_and_stress, kissing_screen)


def run_all(seed: int = 0, max_vertices: int = 9) -> list[CriterionResult]:
    out = []
    for fn in CRITERIA:
        kwargs = {}
        if fn in (weighted_mass, generated_ball_empirics):
            kwargs["seed"] = seed
        if fn in (decide_build_coherence, hexlet_equivalence, lift_and_stress):
            kwargs["max_vertices"] = max_vertices
        out.append(fn(**kwargs))
    return out
