import math
from fractions import Fraction

import pytest

from listssm import (
    DomainError,
    GraphListPair,
    approx_count,
    count_colorings,
    error_functional,
    marginal,
    marginal_recursive,
    ratio_exact,
    recursive_vector,
    reduce_pairwise,
    reduce_single,
)
from listssm.recursion import ApproxCountError

from conftest import brute_marginal, path_pair, star_pair

EDGE = GraphListPair.build(2, [(0, 1)], [[2, 3], [1, 2]])


# -------------------------------------------------------------- reductions

def test_reduce_single_neighbor_only_deletes_vertex():
    p = path_pair(2, [1, 2, 3])
    red = reduce_pairwise(p, 0, 1, 2, 1)
    assert red.pair.n == 1 and red.removed == ()
    assert red.pair.lists[red.target] == {1, 2, 3}


def test_reduce_pairwise_star():
    p = star_pair(2, [1, 2, 3], [1, 2, 3])
    red = reduce_pairwise(p, 0, 1, 2, 1)
    assert red.removed == ((2, 2),)
    assert red.pair.lists[red.vertex_map[1]] == {1, 2, 3}
    assert red.pair.lists[red.vertex_map[2]] == {1, 3}


def test_reduce_pairwise_equal_colors_matches_single_removal():
    p = star_pair(3, [1, 2, 3], [1, 2, 3])
    for i in (1, 2, 3):
        red = reduce_pairwise(p, 0, 2, 2, i)
        assert {c for _, c in red.removed} <= {2}
        assert {u for u, _ in red.removed} == {k for k in (1, 2, 3) if k != i}


def test_reduce_single():
    p = path_pair(3, [1, 2, 3])
    assert reduce_single(p, 1, 1, 1).removed == ()
    red = reduce_single(p, 1, 1, 2)
    assert red.removed == ((0, 1),)
    assert red.pair.lists[red.vertex_map[0]] == {2, 3}
    q = GraphListPair.build(3, [(0, 1), (1, 2)], [[2, 3], [1, 2], [1, 3]])
    assert reduce_single(q, 1, 1, 2).removed == ()


def test_reduce_bad_index_and_color():
    p = path_pair(3, [1, 2, 3])
    with pytest.raises(IndexError):
        reduce_single(p, 1, 1, 3)
    with pytest.raises(ValueError):
        reduce_pairwise(p, 1, 9, 1, 1)


# ------------------------------------------------------------------- ratio

def test_ratio_edge():
    assert ratio_exact(EDGE, 1, 1, 2) == 2


def test_ratio_symmetric_cases():
    p = star_pair(3, [1, 2, 3, 4], [1, 2, 3, 4])
    assert ratio_exact(p, 0, 1, 3) == 1
    assert ratio_exact(p, 0, 2, 2) == 1


def test_ratio_matches_brute_force(load):
    for name in ("k33_lists.txt", "c6.txt", "grid2x4.txt"):
        pair = load(name)
        for v in (0, pair.n - 1):
            lst = sorted(pair.lists[v])
            for j1 in lst:
                for j2 in lst:
                    den = brute_marginal(pair, None, v, j2)
                    if den:
                        assert ratio_exact(pair, v, j1, j2) == brute_marginal(pair, None, v, j1) / den


def test_ratio_with_condition():
    p = path_pair(5, [1, 2, 3])
    cond = {0: 1, 4: 2}
    assert ratio_exact(p, 2, 1, 3, cond) == marginal(p, cond, 2, 1) / marginal(p, cond, 2, 3)


# --------------------------------------------------------------- recursion

def test_recursion_edge():
    assert marginal_recursive(EDGE, 1, 1, depth=2) == pytest.approx(2 / 3, abs=1e-15)


def test_recursion_isolated_vertex():
    p = GraphListPair.build(1, [], [[1, 4, 9]])
    for depth in range(4):
        assert marginal_recursive(p, 0, 4, depth=depth) == pytest.approx(1 / 3)


def test_recursion_star_oracle_base():
    p = star_pair(3, [1, 2, 3, 4, 5], [1, 2, 3, 4, 5])
    vec = recursive_vector(p, 0, depth=1, base="oracle")
    assert all(x == pytest.approx(0.2, abs=1e-15) for x in vec.values())


def test_recursion_oracle_base_matches_oracle(load):
    pair = load("c6.txt")
    exact = marginal_vector_f(pair, None, 0)
    for depth in range(1, 4):
        got = recursive_vector(pair, 0, depth=depth, base="oracle")
        assert max(abs(got[j] - exact[j]) for j in exact) <= 1e-12


def test_pure_recursion_exact_on_tree():
    p = GraphListPair.build(5, [(0, 1), (1, 2), (1, 3), (3, 4)], [[1, 2, 3], [1, 2], [2, 3], [1, 3], [1, 2, 3]])
    exact = marginal_vector_f(p, {4: 1}, 1)
    got = recursive_vector(p, 1, {4: 1}, depth=4)
    assert max(abs(got[j] - exact[j]) for j in exact) <= 1e-12


def test_recursion_bad_arguments():
    with pytest.raises(ValueError):
        recursive_vector(EDGE, 1, depth=-1)
    with pytest.raises(ValueError):
        recursive_vector(EDGE, 1, base="nope")


def marginal_vector_f(pair, cond, v):
    from listssm import marginal_vector
    return marginal_vector(pair, cond, v).as_floats()


# -------------------------------------------------------- error functional

def test_error_functional_zero_for_equal():
    ev = error_functional({1: 0.3, 2: 0.7}, {1: 0.3, 2: 0.7})
    assert ev.value == 0


def test_error_functional_log3():
    ev = error_functional({1: Fraction(1, 2), 2: Fraction(1, 2)}, {1: Fraction(1, 4), 2: Fraction(3, 4)})
    assert ev.value == pytest.approx(math.log(3), abs=1e-15)
    assert (ev.argmax, ev.argmin) == (1, 2)
    assert ev.max_log >= 0 >= ev.min_log


def test_error_functional_rejects_bad_input():
    with pytest.raises(DomainError):
        error_functional({1: 0, 2: 1}, {1: 0.5, 2: 0.5})
    with pytest.raises(ValueError):
        error_functional({1: 1.0}, {2: 1.0})


# ------------------------------------------------------------ approx count

def test_approx_count_examples(load):
    assert approx_count(GraphListPair.build(1, [], [[1, 2, 3]]), depth=0).z == pytest.approx(3)
    assert approx_count(path_pair(2, [1, 2]), depth=2).z == pytest.approx(2)
    c4 = load("c4.txt")
    assert approx_count(c4, depth=6).z == pytest.approx(18, rel=0.01)


def test_approx_count_trace():
    res = approx_count(path_pair(3, [1, 2, 3]), depth=3)
    assert [t[0] for t in res.trace] == [0, 1, 2]
    assert res.log_z == pytest.approx(math.log(12))


def test_approx_count_failure_keeps_trace():
    # with depth 0 the greedy choice can paint the graph into a corner
    p = GraphListPair.build(3, [(0, 1), (1, 2)], [[1, 2], [1, 2], [2]])
    with pytest.raises(ApproxCountError) as info:
        approx_count(p, depth=0)
    assert len(info.value.trace) >= 1
    assert count_colorings(p) == 1


def _longest_path_from(adj, v, allowed):
    best = 0
    stack = [(v, frozenset([v]), 0)]
    while stack:
        u, seen, length = stack.pop()
        best = max(best, length)
        for w in adj[u]:
            if w in allowed and w not in seen:
                stack.append((w, seen | {w}, length + 1))
    return best


def test_pure_recursion_exact_at_longest_path_depth():
    # cycles need the longest self-avoiding walk, not the diameter
    import networkx as nx
    from listssm import marginal_vector
    from listssm.graph import distances_from

    for g in nx.graph_atlas_g()[1:300]:
        n = g.number_of_nodes()
        if not nx.is_connected(g) or any(nx.triangles(g).values()):
            continue
        pair = GraphListPair.build(n, list(g.edges()), [[1, 2, 3, 4]] * n)
        for v in range(n):
            dist = distances_from(pair, v)
            for r in range(max(dist.values()) + 1):
                psi = {u for u in range(n) if dist[u] <= r}
                cond = {u: 1 + (u % 4) for u in range(n) if u not in psi}
                if not count_colorings(pair, cond):
                    continue
                # one extra level lets the last free vertex see the boundary
                depth = _longest_path_from(pair.adj, v, psi) + 1
                got = recursive_vector(pair, v, cond, depth)
                exact = marginal_vector(pair, cond, v).as_floats()
                assert max(abs(got[j] - exact[j]) for j in exact) <= 1e-10


def test_c6_diameter_depth_is_not_enough():
    lists = [[1, 2, 3], [1, 2], [2, 3], [1, 3], [1, 2, 3], [2, 3, 4]]
    c6 = GraphListPair.build(6, [(i, (i + 1) % 6) for i in range(6)], lists)
    from listssm import marginal_vector
    exact = marginal_vector(c6, None, 0).as_floats()
    short = recursive_vector(c6, 0, depth=4)
    full = recursive_vector(c6, 0, depth=5)
    assert max(abs(full[j] - exact[j]) for j in exact) <= 1e-12
    assert max(abs(short[j] - exact[j]) for j in exact) > 1e-6


def test_ratio_degenerate_chain_raises():
    from listssm import DegenerateInstance
    edges = [(0, 1), (1, 2), (1, 4), (1, 5), (2, 3), (2, 6), (3, 4), (5, 6)]
    lists = [[2, 4], [2, 4], [2, 4], [1, 2, 3, 4], [1, 2], [3, 4], [1, 2, 3, 4]]
    pair = GraphListPair.build(7, edges, lists)
    assert marginal(pair, {3: 3}, 6, 4) / marginal(pair, {3: 3}, 6, 3) == 2
    with pytest.raises(DegenerateInstance):
        ratio_exact(pair, 6, 4, 3, {3: 3})
