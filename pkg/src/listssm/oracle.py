"""Exact counting of list colorings and the conditional quantities built on it.

Counts are Python integers and probabilities are :class:`fractions.Fraction`,
so every quantity here is exact.  The counter is a backtracking search with a
minimum-remaining-values vertex order, plus three reductions that keep
desk-scale instances fast without changing the result:

* the remaining graph is split into connected components, whose counts
  multiply;
* colors whose availability pattern over the current component is identical
  are interchangeable, so the branch for one stands in for all of them;
* sub-problems are memoized under a key that is invariant under permuting
  colors (the vertex set plus the multiset of per-color availability masks).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import UncolorableRegion
from .graph import GraphListPair


class BoundaryCondition(Mapping[int, int]):
    """An immutable partial coloring ``vertex -> color``; absent vertices are free."""

    __slots__ = ("_items", "_hash")

    def __init__(self, assignments: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = dict(assignments)
        self._items = dict(sorted(items.items()))
        self._hash = hash(frozenset(self._items.items()))

    def __getitem__(self, v):
        return self._items[v]

    def __iter__(self):
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return dict(self._items) == dict(other)
        return NotImplemented

    def __repr__(self):
        return f"BoundaryCondition({self._items!r})"

    def extend(self, more: Mapping[int, int]) -> BoundaryCondition:
        merged = dict(self._items)
        merged.update(more)
        return BoundaryCondition(merged)

    def without(self, vertices: Iterable[int]) -> BoundaryCondition:
        drop = set(vertices)
        return BoundaryCondition({u: c for u, c in self._items.items() if u not in drop})

    def restricted_to(self, vertices: Iterable[int]) -> BoundaryCondition:
        keep = set(vertices)
        return BoundaryCondition({u: c for u, c in self._items.items() if u in keep})

    def relabel(self, vertex_map: Mapping[int, int]) -> BoundaryCondition:
        """Map onto a relabeled graph, dropping vertices absent from the map."""
        return BoundaryCondition({vertex_map[u]: c for u, c in self._items.items() if u in vertex_map})

    def check(self, pair: GraphListPair) -> None:
        for u, c in self._items.items():
            if not 0 <= u < pair.n:
                raise ValueError(f"condition assigns out-of-range vertex {u}")
            if c not in pair.lists[u]:
                raise ValueError(f"condition color {c} not in list of vertex {u}")


EMPTY = BoundaryCondition()


def as_condition(condition) -> BoundaryCondition:
    if condition is None:
        return EMPTY
    if isinstance(condition, BoundaryCondition):
        return condition
    return BoundaryCondition(condition)


@dataclass(frozen=True)
class MarginalVector(Mapping[int, Fraction]):
    """Conditional law of the color of one vertex, keyed by color."""

    vertex: int
    probs: Mapping[int, Fraction]

    def __getitem__(self, color):
        return self.probs[color]

    def __iter__(self):
        return iter(sorted(self.probs))

    def __len__(self):
        return len(self.probs)

    def as_floats(self) -> dict[int, float]:
        return {c: float(p) for c, p in sorted(self.probs.items())}


# ---------------------------------------------------------------- counting


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Counter:
    """Counting engine bound to one adjacency structure; caches across calls."""

    MAX_CACHE = 2_000_000

    def __init__(self, adj: tuple[frozenset[int], ...]):
        self.nbr = [sum(1 << w for w in nb) for nb in adj]
        self.cache: dict = {}

    def count(self, vmask: int, avail: dict[int, int]) -> int:
        total = 1
        for comp in self._components(vmask):
            c = self._count_connected(comp, avail)
            if c == 0:
                return 0
            total *= c
        return total

    def _components(self, vmask: int) -> list[int]:
        comps = []
        rest = vmask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for u in _bits(frontier):
                    grow |= self.nbr[u]
                grow &= rest & ~comp
                comp |= grow
                frontier = grow
            comps.append(comp)
            rest &= ~comp
        return comps

    def _count_connected(self, comp: int, avail: dict[int, int]) -> int:
        verts = list(_bits(comp))
        if len(verts) == 1:
            return avail[verts[0]].bit_count()
        if len(verts) == 2:
            a, b = avail[verts[0]], avail[verts[1]]
            return a.bit_count() * b.bit_count() - (a & b).bit_count()

        sig: dict[int, int] = {}
        for u in verts:
            bit = 1 << u
            for c in _bits(avail[u]):
                sig[c] = sig.get(c, 0) | bit
        key = (comp, tuple(sorted(sig.values())))
        hit = self.cache.get(key)
        if hit is not None:
            return hit

        # minimum remaining values; ties to the largest degree inside comp
        u = min(verts, key=lambda w: (avail[w].bit_count(), -(self.nbr[w] & comp).bit_count(), w))
        classes: dict[int, list[int]] = {}
        for c in _bits(avail[u]):
            classes.setdefault(sig[c], []).append(c)

        rest = comp & ~(1 << u)
        nb = self.nbr[u] & rest
        result = 0
        for colors in classes.values():
            c = colors[0]
            drop = ~(1 << c)
            sub = dict(avail)
            empty = False
            for w in _bits(nb):
                sub[w] = avail[w] & drop
                if not sub[w]:
                    empty = True
                    break
            if not empty:
                result += len(colors) * self.count(rest, sub)

        if len(self.cache) > self.MAX_CACHE:
            self.cache.clear()
        self.cache[key] = result
        return result


@lru_cache(maxsize=256)
def _counter_for(adj: tuple[frozenset[int], ...]) -> _Counter:
    return _Counter(adj)


def _masks(pair: GraphListPair, condition: Mapping[int, int]) -> dict[int, int]:
    avail = {}
    for u in pair.vertices:
        lst = pair.lists[u]
        if u in condition:
            c = condition[u]
            avail[u] = (1 << c) if c in lst else 0
        else:
            avail[u] = sum(1 << c for c in lst)
    return avail


def count_colorings(pair: GraphListPair, condition=None) -> int:
    """Number of proper list colorings of ``pair`` agreeing with ``condition``.

    Assigned vertices stay in the graph with their color fixed, so they
    exclude that color from their neighbors.  An assignment outside the
    vertex's list yields 0.
    """
    condition = as_condition(condition)
    for u in condition:
        if not 0 <= u < pair.n:
            raise ValueError(f"condition assigns out-of-range vertex {u}")
    avail = _masks(pair, condition)
    if any(m == 0 for m in avail.values()):
        return 0
    if pair.n == 0:
        return 1
    return _counter_for(pair.adj).count((1 << pair.n) - 1, avail)


def _require_colorable(z: int, condition) -> None:
    if z == 0:
        raise UncolorableRegion(f"no proper list coloring extends {condition!r}")


def marginal(pair: GraphListPair, condition, v: int, j: int) -> Fraction:
    """``P(c(v) = j | condition)`` as an exact fraction.

    Colors outside ``L(v)`` have probability 0.  If ``v`` is itself assigned,
    the result is the indicator of its assigned color.
    """
    condition = as_condition(condition)
    z = count_colorings(pair, condition)
    _require_colorable(z, condition)
    if j not in pair.lists[v]:
        return Fraction(0)
    if v in condition:
        return Fraction(int(condition[v] == j))
    return Fraction(count_colorings(pair, condition.extend({v: j})), z)


def marginal_vector(pair: GraphListPair, condition, v: int) -> MarginalVector:
    condition = as_condition(condition)
    z = count_colorings(pair, condition)
    _require_colorable(z, condition)
    if v in condition:
        probs = {j: Fraction(int(condition[v] == j)) for j in pair.lists[v]}
    else:
        probs = {j: Fraction(count_colorings(pair, condition.extend({v: j})), z) for j in sorted(pair.lists[v])}
    return MarginalVector(v, probs)


def proper_colorings_of(pair: GraphListPair, vertices: Iterable[int]) -> Iterator[dict[int, int]]:
    """Proper list colorings of the induced subgraph on ``vertices``."""
    vs = sorted(set(vertices))
    for combo in itertools.product(*(sorted(pair.lists[u]) for u in vs)):
        sigma = dict(zip(vs, combo))
        if all(sigma[w] != c for u, c in sigma.items() for w in pair.adj[u] if w in sigma):
            yield sigma


def joint_law(pair: GraphListPair, condition, vertices: Iterable[int]) -> dict[tuple, Fraction]:
    """Exact joint law of the colors of ``vertices``; keys are color tuples in ascending vertex order.

    Only colorings with positive probability are included.
    """
    condition = as_condition(condition)
    z = count_colorings(pair, condition)
    _require_colorable(z, condition)
    vs = sorted(set(vertices))
    law = {}
    for sigma in proper_colorings_of(pair, vs):
        if any(u in condition and condition[u] != c for u, c in sigma.items()):
            continue
        k = count_colorings(pair, condition.extend(sigma))
        if k:
            law[tuple(sigma[u] for u in vs)] = Fraction(k, z)
    return law


def tv_distance_restricted(pair: GraphListPair, psi, c1, c2, lam) -> Fraction:
    """Sum over joint colorings of ``lam`` of ``|P(sigma | c1) - P(sigma | c2)|``.

    This is the unhalved total variation distance, so it lies in ``[0, 2]``.
    """
    psi = frozenset(psi)
    c1, c2 = as_condition(c1), as_condition(c2)
    lam = frozenset(lam)
    if not lam <= psi:
        raise ValueError("lambda must be a subset of psi")
    for name, c in (("c1", c1), ("c2", c2)):
        inside = psi & set(c)
        if inside:
            raise ValueError(f"{name} assigns vertices inside psi: {sorted(inside)}")
    if not lam:
        # both laws are the point mass on the empty coloring
        _require_colorable(count_colorings(pair, c1), c1)
        _require_colorable(count_colorings(pair, c2), c2)
        return Fraction(0)
    p1 = joint_law(pair, c1, lam)
    p2 = joint_law(pair, c2, lam)
    return sum((abs(p1.get(s, 0) - p2.get(s, 0)) for s in p1.keys() | p2.keys()), Fraction(0))
