"""Absorbing fixed boundary colors into neighbor lists."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from ..errors import UncolorableRegion
from ..graph import GraphListPair, Region, delete_vertices, distances_from
from ..oracle import BoundaryCondition, as_condition


@dataclass(frozen=True)
class StrippedInstance:
    """A pair with some assigned vertices deleted and their colors pushed
    into the neighbors' lists.

    ``vertex_map`` sends surviving old ids to new ids; ``removed`` records
    ``(old_vertex, color)`` for every color actually dropped from a list.
    """

    pair: GraphListPair
    vertex_map: Mapping[int, int]
    deleted: frozenset[int]
    removed: tuple[tuple[int, int], ...]

    def restrict(self, condition) -> BoundaryCondition:
        """The condition on surviving vertices, in new ids."""
        return as_condition(condition).relabel(self.vertex_map)

    def __getitem__(self, v: int) -> int:
        return self.vertex_map[v]


def absorb(pair: GraphListPair, condition, vertices: Iterable[int] | None = None) -> StrippedInstance:
    """Delete the assigned ``vertices`` (default: all assigned) and remove
    each one's color from its neighbors' lists.

    Marginals of the surviving vertices are unchanged when the remaining
    assignments are carried over with :meth:`StrippedInstance.restrict`.
    """
    condition = as_condition(condition)
    targets = set(condition) if vertices is None else set(vertices) & set(condition)
    drops: dict[int, set[int]] = {}
    removed = []
    for u in sorted(targets):
        c = condition[u]
        if c not in pair.lists[u]:
            raise UncolorableRegion(f"color {c} not in list of vertex {u}")
        for w in sorted(pair.adj[u]):
            if w in targets:
                if condition[w] == c:
                    raise UncolorableRegion(f"adjacent vertices {u}, {w} both assigned {c}")
                continue
            if c in pair.lists[w] and c not in drops.get(w, ()):
                drops.setdefault(w, set()).add(c)
                removed.append((w, c))
    reduced, vmap = delete_vertices(pair, targets, drops)
    return StrippedInstance(reduced, vmap, frozenset(targets), tuple(removed))


def strip_near_boundary(pair: GraphListPair, psi, v: int, c_common, d: int) -> StrippedInstance:
    """Absorb the boundary vertices of ``psi`` closer than ``d`` to ``v``.

    Only vertices that ``c_common`` assigns are deleted; free ones stay in
    the graph, where they are summed over exactly as before.  ``d = 1``
    deletes nothing.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    region = psi if isinstance(psi, Region) else Region.of(pair, psi)
    if v not in region.vertices:
        raise ValueError(f"vertex {v} is not in the region")
    c_common = as_condition(c_common)
    inside = region.vertices & set(c_common)
    if inside:
        raise ValueError(f"condition assigns region vertices {sorted(inside)}")
    dist = distances_from(pair, v)
    near = {u for u in region.boundary if dist.get(u, d) < d}
    return absorb(pair, c_common, near)
