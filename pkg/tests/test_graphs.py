import itertools
import json

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from apollopack.graphs import (NOT_PACKABLE, PACKABLE, UNKNOWN, CliqueLimitExceeded, Graph,
                               StackProgram, boundary_facets, complete, cycle, decide_packable_stacked4,
                               dual_tree, empty_graph, enumerate_stack_programs,
                               graph_of_stack_program, is_isomorphic, is_k_tree,
                               is_stacked_polytopal, join, kissing_number, kissing_screen, link,
                               maximal_cliques, orthoplex, path)

K3 = complete(3)


def _brute_maximal_cliques(g):
    cliques = [set(c) for k in range(1, g.n + 1)
               for c in itertools.combinations(range(g.n), k) if g.is_clique(c)]
    return sorted(tuple(sorted(c)) for c in cliques if not any(c < o for o in cliques))


def _stacked_graphs(max_vertices=9, p=4):
    return [graph_of_stack_program(sp) for sp in enumerate_stack_programs(p, max_vertices)]


STACKED9 = _stacked_graphs()


small_graphs = st.integers(0, 5).flatmap(
    lambda n: st.builds(Graph, st.just(n),
                        st.lists(st.tuples(st.integers(0, max(n - 1, 0)),
                                           st.integers(0, max(n - 1, 0)))
                                 .filter(lambda e: e[0] != e[1]), max_size=10)))


def test_join_of_triangle_and_edge_is_k5():
    assert join(K3, path(2)) == complete(5)


def test_octahedron_skeleton():
    g = orthoplex(3)
    assert (g.n, g.edge_count()) == (6, 12)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_orthoplex_splits_as_join_with_square(d):
    assert is_isomorphic(join(orthoplex(d - 1), cycle(4)), orthoplex(d + 1))


@given(small_graphs, small_graphs)
def test_join_edge_count(g, h):
    assert join(g, h).edge_count() == g.edge_count() + h.edge_count() + g.n * h.n


@given(small_graphs, small_graphs, small_graphs)
def test_join_is_associative_up_to_isomorphism(a, b, c):
    assert is_isomorphic(join(join(a, b), c), join(a, join(b, c)))


def test_graph_rejects_loops_and_out_of_range_edges():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])


def test_k_tree_examples():
    ok, order = is_k_tree(complete(5), 4)
    assert ok and sorted(order) == list(range(5))
    assert is_k_tree(join(K3, path(4)), 4)[0]
    assert is_k_tree(cycle(5), 2) == (False, None)


def test_triangle_join_path_has_size_five_maximal_cliques_by_brute_force():
    g = join(K3, path(4))
    cliques = _brute_maximal_cliques(g)
    assert cliques == maximal_cliques(g)
    assert {len(c) for c in cliques} == {5}


@given(st.lists(st.integers(0, 10**6), max_size=6), st.integers(2, 4))
def test_stacking_on_any_clique_gives_a_k_tree_with_valid_order(choices, k):
    sp = StackProgram(k)
    for c in choices:
        faces = [f for f in itertools.combinations(range(sp.n), k)
                 if graph_of_stack_program(sp).is_clique(f)]
        sp = sp.then(faces[c % len(faces)])
    g = graph_of_stack_program(sp)
    ok, order = is_k_tree(g, k)
    assert ok
    placed = set(order[:k + 1])
    assert g.is_clique(placed)
    for v in order[k + 1:]:
        back = g.neighbors(v) & placed
        assert len(back) == k and g.is_clique(back)
        placed.add(v)


def test_stacked_polytopal_examples():
    assert is_stacked_polytopal(complete(5), 4)
    bad = is_stacked_polytopal(join(K3, empty_graph(3)), 4)
    assert not bad
    assert is_stacked_polytopal(join(K3, path(6)), 4)
    assert not is_stacked_polytopal(join(K3, path(6)), 5)


def test_overstacked_facet_is_the_witness():
    # stack twice on the facet {0,1,2,3} of the 4-simplex
    sp = StackProgram(4, [(0, 1, 2, 3), (0, 1, 2, 3)])
    verdict = is_stacked_polytopal(graph_of_stack_program(sp), 4)
    assert not verdict and verdict.witness == (0, 1, 2, 3)


@given(st.lists(st.integers(0, 10**6), max_size=5))
def test_stacked_iff_every_face_in_at_most_two_simplices(choices):
    p = 4
    sp = StackProgram(p)
    for c in choices:
        g = graph_of_stack_program(sp)
        faces = [f for f in itertools.combinations(range(sp.n), p) if g.is_clique(f)]
        sp = sp.then(faces[c % len(faces)])
    g = graph_of_stack_program(sp)
    simplices = [c for c in itertools.combinations(range(g.n), p + 1) if g.is_clique(c)]
    worst = max(sum(set(f) <= set(s) for s in simplices)
                for f in itertools.combinations(range(g.n), p) if g.is_clique(f))
    assert bool(is_stacked_polytopal(g, p)) == (worst <= 2)


def test_decide_examples():
    assert decide_packable_stacked4(join(K3, path(5))).decision == PACKABLE
    verdict = decide_packable_stacked4(join(K3, path(6)))
    assert verdict.decision == NOT_PACKABLE and verdict.witness == (0, 1, 2)
    assert decide_packable_stacked4(complete(5)).decision == PACKABLE


def test_decide_is_unknown_outside_stacked_four_polytopes():
    assert decide_packable_stacked4(cycle(5)).decision == UNKNOWN
    assert decide_packable_stacked4(orthoplex(4)).decision == UNKNOWN


def test_stacking_around_a_triangle_flips_at_six_neighbours():
    # every stack lands on a facet containing {0,1,2}; the triangle gains one
    # common neighbour per stack, starting from {3, 4}
    sp = StackProgram(4)
    last = 4
    for k in range(1, 5):
        sp = sp.then((0, 1, 2, last))
        last = sp.n - 1
        g = graph_of_stack_program(sp)
        assert len(g.common_neighbors((0, 1, 2))) == 2 + k
        expect = PACKABLE if 2 + k <= 5 else NOT_PACKABLE
        assert decide_packable_stacked4(g).decision == expect
        if k == 3:
            assert is_isomorphic(g, join(K3, path(5)))


def test_not_packable_is_inherited_by_stacked_supergraphs():
    level10 = [g for g in _stacked_graphs(10) if g.n == 10]
    checked = 0
    for big in level10:
        for v in range(big.n):
            small = big.without(v)
            if is_stacked_polytopal(small, 4) and \
                    decide_packable_stacked4(small).decision == NOT_PACKABLE:
                checked += 1
                assert decide_packable_stacked4(big).decision == NOT_PACKABLE
    assert checked > 0


def test_stack_program_graph_examples():
    assert graph_of_stack_program(StackProgram(4)) == complete(5)
    g = graph_of_stack_program(StackProgram(4, [(0, 1, 2, 3)]))
    assert g.n == 6 and g.neighbors(5) == frozenset({0, 1, 2, 3})


def test_stack_on_non_clique_is_rejected():
    sp = StackProgram(4, [(0, 1, 2, 3), (0, 1, 2, 4), (3, 4, 5, 6)])
    with pytest.raises(ValueError):
        graph_of_stack_program(sp)


@pytest.mark.parametrize("g", STACKED9, ids=lambda g: f"n{g.n}e{g.edge_count()}")
def test_stack_programs_yield_four_trees(g):
    assert is_k_tree(g, 4)[0]
    assert is_stacked_polytopal(g, 4)


def test_dual_tree_examples():
    single = dual_tree(complete(5), 4)
    assert single.tree.n == 1
    g = join(K3, path(5))
    dt = dual_tree(g, 4)
    assert dt.tree.n == 4 and is_isomorphic(dt.tree, path(4))
    leaves = [k for k in range(dt.tree.n) if dt.tree.degree(k) == 1]
    leaf_vertices = {v for k in leaves for v in dt.cliques[k] if g.degree(v) == 4}
    assert leaf_vertices == {3, 7}


@pytest.mark.parametrize("g", [g for g in STACKED9 if g.n >= 6],
                         ids=lambda g: f"n{g.n}e{g.edge_count()}")
def test_dual_tree_is_a_tree_whose_leaves_hold_degree_four_vertices(g):
    dt = dual_tree(g, 4)
    assert nx.is_tree(dt.tree.to_networkx())
    leaves = [k for k in range(dt.tree.n) if dt.tree.degree(k) == 1]
    assert len(leaves) == sum(g.degree(v) == 4 for v in range(g.n))
    for k in leaves:
        assert sum(g.degree(v) == 4 for v in dt.cliques[k]) == 1


def test_dual_tree_rejects_non_stacked_graphs():
    with pytest.raises(ValueError):
        dual_tree(join(K3, empty_graph(3)), 4)


def test_link_examples():
    assert link(join(K3, path(5)), (0, 1, 2)) == path(5)
    assert link(complete(5), (0, 1, 2)) == complete(2)
    assert link(join(K3, cycle(6)), (0, 1, 2)) == cycle(6)
    with pytest.raises(ValueError):
        link(path(3), (0, 2))


@pytest.mark.parametrize("g", STACKED9, ids=lambda g: f"n{g.n}e{g.edge_count()}")
def test_link_of_every_triangle_is_a_path(g):
    for tri in itertools.combinations(range(g.n), 3):
        if g.is_clique(tri):
            lk = link(g, tri).to_networkx()
            assert nx.is_tree(lk) and max(dict(lk.degree).values()) <= 2


def test_kissing_table():
    assert [kissing_number(d, 1) for d in (1, 2, 3, 4, 8, 24)] == [2, 6, 12, 24, 240, 196560]
    assert all(kissing_number(d, d) == 2 for d in range(1, 10))
    assert (kissing_number(2, 1), kissing_number(3, 2), kissing_number(5, 4)) == (6, 5, 4)
    assert kissing_number(5, 1) is None and kissing_number(6, 3) is None


def test_kissing_screen_examples():
    hits = kissing_screen(join(K3, complete(13)), 4)
    assert any(v.clique == (0, 1, 2) and (v.count, v.bound) == (13, 12) for v in hits)
    hits = kissing_screen(join(complete(5), empty_graph(3)), 4)
    assert [(v.clique, v.count, v.bound) for v in hits] == [((0, 1, 2, 3, 4), 3, 2)]
    assert kissing_screen(complete(6), 4) == []


def test_kissing_screen_reports_unknown_bounds_on_request():
    g = join(complete(3), complete(3))
    assert kissing_screen(g, 7) == []
    assert any(v.unknown for v in kissing_screen(g, 7, report_unknown=True))


def test_enumeration_small_levels():
    assert [sp.n for sp in enumerate_stack_programs(4, 5)] == [5]
    assert [sp.n for sp in enumerate_stack_programs(4, 6)] == [5, 6]


def test_enumeration_regression_counts():
    counts = {}
    for g in STACKED9:
        counts[g.n] = counts.get(g.n, 0) + 1
    assert counts == {5: 1, 6: 1, 7: 1, 8: 3, 9: 7}


def test_enumeration_matches_brute_force_isomorphism_classes():
    # every facet sequence, deduplicated by pairwise isomorphism only
    level = [StackProgram(4)]
    for n in range(6, 10):
        nxt = [sp.then(f) for sp in level for f in boundary_facets(sp)]
        reps = []
        for sp in nxt:
            g = graph_of_stack_program(sp).to_networkx()
            if not any(nx.is_isomorphic(g, r) for r in reps):
                reps.append(g)
        assert len(reps) == sum(g.n == n for g in STACKED9)
        level = nxt


def test_enumeration_agrees_with_filtered_k_trees():
    all_trees = [graph_of_stack_program(sp)
                 for sp in enumerate_stack_programs(4, 9, facets_only=False)]
    stacked = [g for g in all_trees if is_stacked_polytopal(g, 4)]
    assert len(stacked) == len(STACKED9)
    for g in stacked:
        assert any(is_isomorphic(g, h) for h in STACKED9)


def test_clique_cap_aborts():
    with pytest.raises(CliqueLimitExceeded):
        maximal_cliques(orthoplex(4), cap=3)


def test_graph_json_and_edge_list_round_trip():
    g = join(K3, path(4))
    assert Graph.from_json(json.loads(json.dumps(g.to_json()))) == g
    text = "# K3 * P4\n" + "\n".join(f"{i} {j}" for i, j in g.sorted_edges()) + "\n\n"
    assert Graph.from_edge_list(text) == g
    with pytest.raises(ValueError):
        Graph.from_edge_list("0 1 2\n")


def test_stack_program_json_round_trip():
    sp = StackProgram(4, [(0, 1, 2, 3)])
    assert StackProgram.from_json(json.loads(json.dumps(sp.to_json()))) == sp
