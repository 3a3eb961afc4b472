import itertools
from fractions import Fraction
from importlib import resources

import pytest

from listssm import GraphListPair, read_graph
from listssm.graph import delete_vertices


def brute_colorings(pair, condition=None):
    """Every proper list coloring consistent with ``condition``, by plain product."""
    condition = dict(condition or {})
    choices = [
        ([condition[v]] if condition[v] in pair.lists[v] else []) if v in condition else sorted(pair.lists[v])
        for v in pair.vertices
    ]
    for combo in itertools.product(*choices):
        if all(combo[u] != combo[w] for u, w in pair.edges):
            yield combo


def brute_count(pair, condition=None):
    return sum(1 for _ in brute_colorings(pair, condition))


def brute_marginal(pair, condition, v, j):
    total = hits = 0
    for c in brute_colorings(pair, condition):
        total += 1
        hits += c[v] == j
    return Fraction(hits, total)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip("]"))):
            terminalreporter.write_line(line)


def fixture_path(name):
    return resources.files("listssm") / "fixtures" / name


@pytest.fixture
def load():
    def _load(name):
        return read_graph(fixture_path(name))
    return _load


def path_pair(n, lists):
    if not isinstance(lists[0], (list, tuple, set, frozenset)):
        lists = [lists] * n
    return GraphListPair.build(n, [(i, i + 1) for i in range(n - 1)], lists)


def star_pair(m, center, leaf):
    return GraphListPair.build(m + 1, [(0, k) for k in range(1, m + 1)], [center] + [leaf] * m)


def telescoping_weights(pair, cond, v, j1, j2):
    """Brute-force count of colorings of G - v where the first k neighbors
    lose ``j1`` and the others lose ``j2``, for k = 0..m."""
    nbrs = pair.neighbors(v)
    out = []
    for k in range(len(nbrs) + 1):
        drops = {u: (j1 if idx < k else j2,) for idx, u in enumerate(nbrs)}
        drops = {u: c for u, c in drops.items() if c[0] in pair.lists[u]}
        reduced, vmap = delete_vertices(pair, (v,), drops)
        out.append(brute_count(reduced, {vmap[u]: c for u, c in cond.items() if u in vmap}))
    return out
