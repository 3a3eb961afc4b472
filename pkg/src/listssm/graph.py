"""Graph/list data model and metric utilities.

Vertices are dense integer ids ``0..n-1``.  Neighbor order is always
ascending id, which fixes the order ``v_1, ..., v_m`` used by the
recursions in :mod:`listssm.recursion`.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

INF = math.inf
"""Distance between vertices in different components."""


@dataclass(frozen=True, eq=True)
class GraphListPair:
    """A simple undirected graph together with one color list per vertex.

    ``adj[u]`` is the neighbor set of ``u`` and ``lists[u]`` its allowed
    colors.  Lists are checked to be subsets of the positive integers but
    may be empty: reduced instances built by the recursions can exhaust a
    list, which simply makes them uncolorable.  Use :meth:`build` for
    user-facing construction, which additionally rejects empty lists.
    """

    adj: tuple[frozenset[int], ...]
    lists: tuple[frozenset[int], ...]
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.adj)
        if len(self.lists) != n:
            raise ValueError(f"{n} adjacency rows but {len(self.lists)} lists")
        for u, nb in enumerate(self.adj):
            if u in nb:
                raise ValueError(f"self-loop at vertex {u}")
            for w in nb:
                if not 0 <= w < n:
                    raise ValueError(f"vertex {u} has out-of-range neighbor {w}")
                if u not in self.adj[w]:
                    raise ValueError(f"adjacency not symmetric at edge ({u}, {w})")
        for u, lst in enumerate(self.lists):
            if any((not isinstance(c, int)) or c < 1 for c in lst):
                raise ValueError(f"list of vertex {u} has non-positive colors")
        object.__setattr__(self, "_hash", hash((self.adj, self.lists)))

    def __hash__(self):
        return self._hash

    @classmethod
    def build(cls, n: int, edges: Iterable[tuple[int, int]], lists) -> GraphListPair:
        """Construct from an edge list, rejecting duplicates and empty lists.

        ``lists`` is a sequence of iterables or a mapping ``vertex -> colors``.
        """
        if n < 0:
            raise ValueError("negative vertex count")
        nbrs = [set() for _ in range(n)]
        for u, w in edges:
            if not (0 <= u < n and 0 <= w < n):
                raise ValueError(f"edge ({u}, {w}) out of range for n={n}")
            if u == w:
                raise ValueError(f"self-loop at vertex {u}")
            if w in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {w})")
            nbrs[u].add(w)
            nbrs[w].add(u)
        if isinstance(lists, Mapping):
            missing = [u for u in range(n) if u not in lists]
            if missing:
                raise ValueError(f"no list given for vertices {missing}")
            lists = [lists[u] for u in range(n)]
        lists = [frozenset(lst) for lst in lists]
        if len(lists) != n:
            raise ValueError(f"expected {n} lists, got {len(lists)}")
        for u, lst in enumerate(lists):
            if not lst:
                raise ValueError(f"empty list at vertex {u}")
        return cls(tuple(frozenset(s) for s in nbrs), tuple(lists))

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def vertices(self) -> range:
        return range(len(self.adj))

    @cached_property
    def q(self) -> int:
        """Palette size: the largest color mentioned by any list."""
        return max((max(lst) for lst in self.lists if lst), default=0)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, w) for u in self.vertices for w in sorted(self.adj[u]) if u < w)

    def neighbors(self, v: int) -> list[int]:
        """Neighbors of ``v`` in canonical (ascending) order."""
        return sorted(self.adj[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adj), default=0)

    def with_lists(self, lists) -> GraphListPair:
        return GraphListPair(self.adj, tuple(frozenset(lst) for lst in lists))


@dataclass(frozen=True)
class Region:
    """A vertex subset together with its outer vertex boundary."""

    vertices: frozenset[int]
    boundary: frozenset[int]

    @classmethod
    def of(cls, pair: GraphListPair, psi: Iterable[int]) -> Region:
        psi = frozenset(psi)
        bad = [u for u in psi if not 0 <= u < pair.n]
        if bad:
            raise ValueError(f"region vertices {sorted(bad)} out of range")
        return cls(psi, boundary(pair, psi))

    def __contains__(self, v) -> bool:
        return v in self.vertices


def boundary(pair: GraphListPair, psi: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``psi`` with at least one neighbor inside it."""
    psi = frozenset(psi)
    out = set()
    for u in psi:
        out |= pair.adj[u]
    return frozenset(out - psi)


def _as_set(x) -> frozenset[int]:
    if isinstance(x, int):
        return frozenset((x,))
    return frozenset(x)


def distance(pair: GraphListPair, a, b) -> int | float:
    """Shortest-path distance between two vertices or vertex sets.

    Returns :data:`INF` when no path exists.
    """
    src, dst = _as_set(a), _as_set(b)
    if not src or not dst:
        raise ValueError("distance needs nonempty vertex sets")
    if src & dst:
        return 0
    seen = set(src)
    frontier = deque((u, 0) for u in sorted(src))
    while frontier:
        u, d = frontier.popleft()
        for w in pair.adj[u]:
            if w in seen:
                continue
            if w in dst:
                return d + 1
            seen.add(w)
            frontier.append((w, d + 1))
    return INF


def distances_from(pair: GraphListPair, source) -> dict[int, int]:
    """BFS distances from a vertex or set to every reachable vertex."""
    src = _as_set(source)
    dist = {u: 0 for u in src}
    frontier = deque(sorted(src))
    while frontier:
        u = frontier.popleft()
        for w in sorted(pair.adj[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                frontier.append(w)
    return dist


def is_triangle_free(pair: GraphListPair) -> bool:
    for u, w in pair.edges:
        if pair.adj[u] & pair.adj[w]:
            return False
    return True


def diameter(pair: GraphListPair) -> int | float:
    """Largest finite or infinite distance over all vertex pairs."""
    best = 0
    for u in pair.vertices:
        dist = distances_from(pair, u)
        if len(dist) < pair.n:
            return INF
        best = max(best, max(dist.values()))
    return best


def delete_vertices(pair: GraphListPair, removed: Iterable[int], list_updates: Mapping[int, Iterable[int]] = None):
    """Delete ``removed`` and relabel the survivors densely, preserving order.

    ``list_updates`` maps surviving (old) vertex ids to colors to drop from
    their lists.  Returns ``(new_pair, vertex_map)`` with ``vertex_map``
    sending old ids of survivors to new ids.
    """
    removed = frozenset(removed)
    keep = [u for u in pair.vertices if u not in removed]
    vmap = {u: i for i, u in enumerate(keep)}
    list_updates = list_updates or {}
    adj = tuple(frozenset(vmap[w] for w in pair.adj[u] if w in vmap) for u in keep)
    lists = tuple(pair.lists[u] - frozenset(list_updates.get(u, ())) for u in keep)
    return GraphListPair(adj, lists), vmap
