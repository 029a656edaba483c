"""Graphs, k-trees, stacked polytopes and the packability decision layer.

Vertices are 0-based integers.  ``join(G, H)`` numbers the vertices of ``G``
first, then those of ``H``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import networkx as nx

PACKABLE = "packable"
NOT_PACKABLE = "not-packable"
UNKNOWN = "unknown"
STACKED = "stacked"
NOT_STACKED = "not-stacked"

DEFAULT_CLIQUE_CAP = 10**6


class CliqueLimitExceeded(RuntimeError):
    pass


class Graph:
    """Immutable simple undirected graph on vertices ``0 .. n-1``."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for e in edges:
            i, j = (int(x) for x in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge {(i, j)} out of range for n={n}")
            norm.add((min(i, j), max(i, j)))
        self.n = n
        self.edges = frozenset(norm)
        adj = [set() for _ in range(n)]
        for i, j in norm:
            adj[i].add(j)
            adj[j].add(i)
        self._adj = tuple(frozenset(a) for a in adj)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._adj[i]

    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(a, b) for a, b in itertools.combinations(vs, 2))

    def common_neighbors(self, vertices: Iterable[int]) -> frozenset:
        vs = list(vertices)
        if not vs:
            return frozenset(range(self.n))
        out = set(self._adj[vs[0]])
        for v in vs[1:]:
            out &= self._adj[v]
        return frozenset(out - set(vs))

    def subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled ``0..k-1`` in increasing original order."""
        vs = sorted(set(vertices))
        index = {v: k for k, v in enumerate(vs)}
        return Graph(len(vs), [(index[i], index[j]) for i, j in self.edges
                               if i in index and j in index])

    def without(self, v: int) -> Graph:
        return self.subgraph(u for u in range(self.n) if u != v)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"

    # -- serialisation ------------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        return cls(int(data["n"]), data.get("edges", []))

    @classmethod
    def from_edge_list(cls, text: str, n: int | None = None) -> Graph:
        """Parse lines ``"i j"``; blank lines and ``#`` comments are skipped."""
        edges = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = re.split(r"[\s,]+", line)
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected two vertex ids, got {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
        size = n if n is not None else 1 + max((max(e) for e in edges), default=-1)
        return cls(size, edges)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


# -- builders -----------------------------------------------------------------

def path(m: int) -> Graph:
    return Graph(m, [(i, i + 1) for i in range(m - 1)])


def cycle(m: int) -> Graph:
    if m < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


def complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def join(g: Graph, h: Graph) -> Graph:
    off = g.n
    edges = list(g.edges)
    edges += [(i + off, j + off) for i, j in h.edges]
    edges += [(i, j + off) for i in range(g.n) for j in range(h.n)]
    return Graph(g.n + h.n, edges)


def orthoplex(d: int) -> Graph:
    """1-skeleton of the ``d``-dimensional cross polytope: ``d`` joined copies of two points."""
    g = Graph(0)
    for _ in range(d):
        g = join(g, empty_graph(2))
    return g


# -- cliques --------------------------------------------------------------------

def maximal_cliques(g: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> list[tuple]:
    """Maximal cliques by pivoting Bron-Kerbosch; aborts past ``cap`` cliques."""
    out = []
    for c in nx.find_cliques(g.to_networkx()):
        out.append(tuple(sorted(c)))
        if len(out) > cap:
            raise CliqueLimitExceeded(f"more than {cap} maximal cliques")
    return sorted(out)


def cliques_of_size(g: Graph, k: int, cap: int = DEFAULT_CLIQUE_CAP) -> list[tuple]:
    """All ``k``-cliques (not only maximal ones), sorted."""
    found = set()
    for c in maximal_cliques(g, cap):
        if len(c) >= k:
            found.update(itertools.combinations(c, k))
            if len(found) > cap:
                raise CliqueLimitExceeded(f"more than {cap} cliques of size {k}")
    return sorted(found)


# -- k-trees and stacked polytopes ----------------------------------------------

@dataclass(frozen=True)
class Verdict:
    decision: str
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.decision in (PACKABLE, STACKED)

    def to_json(self) -> dict:
        out = {"decision": self.decision,
               "witness": list(self.witness) if self.witness is not None else None}
        if self.reason and self.decision in (UNKNOWN, NOT_STACKED):
            out["reason"] = self.reason
        return out


def is_k_tree(g: Graph, k: int) -> tuple[bool, list[int] | None]:
    """Recognise a k-tree by peeling simplicial degree-``k`` vertices.

    Returns the construction order on success: the first ``k+1`` vertices form
    the base clique, and every later vertex attaches to a ``k``-clique of
    earlier ones.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if g.n < k + 1 or g.edge_count() != k * g.n - k * (k + 1) // 2:
        return False, None
    alive = set(range(g.n))
    deg = {v: g.degree(v) for v in alive}
    removed: list[int] = []
    candidates = sorted(v for v in alive if deg[v] == k)
    while len(alive) > k + 1:
        pick = None
        while candidates:
            v = candidates.pop(0)
            if v in alive and deg[v] == k and g.is_clique(g.neighbors(v) & alive):
                pick = v
                break
        if pick is None:
            return False, None
        alive.remove(pick)
        removed.append(pick)
        for u in g.neighbors(pick) & alive:
            deg[u] -= 1
            if deg[u] == k:
                candidates.append(u)
        candidates.sort()
    if not g.is_clique(alive):
        return False, None
    return True, sorted(alive) + removed[::-1]


def is_stacked_polytopal(g: Graph, p: int) -> Verdict:
    """Graph of a stacked ``p``-polytope: a ``p``-tree with no ``p``-clique in three ``(p+1)``-cliques."""
    if p < 2:
        raise ValueError("polytope dimension must be at least 2")
    ok, _ = is_k_tree(g, p)
    if not ok:
        return Verdict(NOT_STACKED, None, f"not a {p}-tree")
    witness = _overstacked_face(g, p)
    if witness is not None:
        return Verdict(NOT_STACKED, witness, f"{p}-clique shared by three {p + 1}-cliques")
    return Verdict(STACKED)


def _overstacked_face(g: Graph, p: int) -> tuple | None:
    counts: dict[tuple, int] = {}
    for c in maximal_cliques(g):
        if len(c) != p + 1:
            continue
        for face in itertools.combinations(c, p):
            counts[face] = counts.get(face, 0) + 1
    for face in sorted(counts):
        if counts[face] >= 3:
            return face
    return None


def decide_packable_stacked4(g: Graph) -> Verdict:
    """3-ball packability of a stacked 4-polytopal graph.

    Packable exactly when no triangle lies in six 4-cliques, i.e. every
    triangle has at most five common neighbours.  Graphs outside the stacked
    4-polytopal class get ``unknown``.
    """
    stacked = is_stacked_polytopal(g, 4)
    if not stacked:
        return Verdict(UNKNOWN, None, "not stacked 4-polytopal: " + stacked.reason)
    for tri in cliques_of_size(g, 3):
        if len(g.common_neighbors(tri)) >= 6:
            return Verdict(NOT_PACKABLE, tri, "triangle shared by six 4-cliques")
    return Verdict(PACKABLE)


def link(g: Graph, face: Iterable[int]) -> Graph:
    """Subgraph induced by the common neighbours of a clique."""
    face = list(face)
    if not g.is_clique(face):
        raise ValueError(f"{face} is not a clique")
    return g.subgraph(g.common_neighbors(face))


@dataclass(frozen=True)
class DualTree:
    cliques: tuple
    tree: Graph


def dual_tree(g: Graph, p: int) -> DualTree:
    """Tree on the maximal cliques of a stacked ``p``-polytopal graph; edges share ``p`` vertices."""
    verdict = is_stacked_polytopal(g, p)
    if not verdict:
        raise ValueError(f"not stacked {p}-polytopal: {verdict.reason}")
    cliques = tuple(c for c in maximal_cliques(g) if len(c) == p + 1)
    by_face: dict[tuple, list[int]] = {}
    for idx, c in enumerate(cliques):
        for face in itertools.combinations(c, p):
            by_face.setdefault(face, []).append(idx)
    edges = [tuple(v) for v in by_face.values() if len(v) == 2]
    return DualTree(cliques, Graph(len(cliques), edges))


# -- kissing numbers ------------------------------------------------------------

_KISSING_ONE = {1: 2, 2: 6, 3: 12, 4: 24, 8: 240, 24: 196560}


def kissing_number(d: int, alpha: int) -> int | None:
    """Known values of ``k(d, alpha)``; ``None`` when unknown."""
    if d < 1 or alpha < 1 or alpha > d:
        return None
    if alpha == d:
        return 2
    if alpha == 1:
        return _KISSING_ONE.get(d)
    if alpha == d - 1:
        return 6 if d == 2 else 5 if d == 3 else 4
    return None


@dataclass(frozen=True)
class KissingViolation:
    clique: tuple
    count: int
    bound: int | None

    @property
    def unknown(self) -> bool:
        return self.bound is None


def kissing_screen(g: Graph, d: int, report_unknown: bool = False) -> list[KissingViolation]:
    """Cliques ``K_{2+alpha}`` with more common neighbours than ``k(d-1, alpha)`` allows."""
    if d < 3:
        raise ValueError("kissing screen needs d >= 3")
    out = []
    for alpha in range(1, d):
        bound = kissing_number(d - 1, alpha)
        for c in cliques_of_size(g, 2 + alpha):
            count = len(g.common_neighbors(c))
            if bound is None:
                if report_unknown and count:
                    out.append(KissingViolation(c, count, None))
            elif count > bound:
                out.append(KissingViolation(c, count, bound))
    return out


# -- stack programs -------------------------------------------------------------

@dataclass(frozen=True)
class StackProgram:
    """Stacked ``p``-polytope script: simplex on ``0..p``, then one new vertex per stack."""

    p: int
    stacks: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "stacks", tuple(tuple(int(v) for v in s) for s in self.stacks))
        if self.p < 2:
            raise ValueError("polytope dimension must be at least 2")
        for k, s in enumerate(self.stacks):
            if len(s) != self.p or len(set(s)) != self.p:
                raise ValueError(f"stack {k} must list {self.p} distinct vertices")

    @property
    def n(self) -> int:
        return self.p + 1 + len(self.stacks)

    def to_json(self) -> dict:
        return {"p": self.p, "stacks": [list(s) for s in self.stacks]}

    @classmethod
    def from_json(cls, data: dict) -> StackProgram:
        return cls(int(data["p"]), tuple(data.get("stacks", [])))

    def then(self, face: Sequence[int]) -> StackProgram:
        return StackProgram(self.p, (*self.stacks, tuple(sorted(face))))


def graph_of_stack_program(sp: StackProgram) -> Graph:
    """1-skeleton of the stacked polytope; every stack must land on a current clique."""
    p = sp.p
    edges = set(itertools.combinations(range(p + 1), 2))
    g = Graph(p + 1, edges)
    for k, face in enumerate(sp.stacks):
        new = p + 1 + k
        if any(v >= new for v in face) or not g.is_clique(face):
            raise ValueError(f"stack {k} on {face} is not a clique of the current polytope")
        edges.update((v, new) for v in face)
        g = Graph(new + 1, edges)
    return g


def boundary_facets(sp: StackProgram) -> list[tuple]:
    """Facets of the current stacked polytope (each stack consumes the facet it is glued to)."""
    p = sp.p
    facets = set(itertools.combinations(range(p + 1), p))
    for k, face in enumerate(sp.stacks):
        face = tuple(sorted(face))
        new = p + 1 + k
        facets.discard(face)
        for v in face:
            facets.add(tuple(sorted((set(face) - {v}) | {new})))
    return sorted(facets)


def enumerate_stack_programs(p: int, max_vertices: int,
                             facets_only: bool = True) -> Iterator[StackProgram]:
    """Stack programs up to ``max_vertices``, one per isomorphism class of graph.

    With ``facets_only`` every stack lands on a boundary facet (proper stacked
    polytopes); otherwise any ``p``-clique is allowed, which yields all
    ``p``-trees.
    """
    if p < 2 or max_vertices < p + 1:
        raise ValueError("need p >= 2 and max_vertices >= p + 1")
    level = [StackProgram(p)]
    n = p + 1
    while True:
        yield from level
        if n == max_vertices:
            return
        buckets: dict[str, list[tuple[Graph, StackProgram]]] = {}
        nxt = []
        for sp in level:
            g = graph_of_stack_program(sp)
            faces = boundary_facets(sp) if facets_only else cliques_of_size(g, p)
            for face in faces:
                child = sp.then(face)
                cg = graph_of_stack_program(child)
                key = nx.weisfeiler_lehman_graph_hash(cg.to_networkx(), iterations=3)
                bucket = buckets.setdefault(key, [])
                if any(is_isomorphic(cg, other) for other, _ in bucket):
                    continue
                bucket.append((cg, child))
                nxt.append(child)
        level = nxt
        n += 1
