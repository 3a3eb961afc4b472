"""Marginal recursions on reduced instances, the log-ratio error functional,
and a self-reducibility counter driven by the truncated recursion.

Neighbors of ``v`` are indexed ``1..m`` in ascending vertex order.  Every
reduced instance deletes ``v`` and relabels the remaining vertices densely;
:class:`ReducedInstance` keeps the vertex map so conditions and vertex ids
can be carried across.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import DegenerateInstance, DomainError, ListColoringError, UncolorableRegion
from .graph import GraphListPair, delete_vertices
from .oracle import BoundaryCondition, as_condition, count_colorings, marginal, marginal_vector


@dataclass(frozen=True)
class ReducedInstance:
    """``G_v`` with modified lists.

    ``removed`` lists ``(old_vertex, color)`` for every color actually taken
    out of a list (absent colors are not recorded).  ``target`` is the new
    id of the neighbor ``v_i`` the reduction was built for.
    """

    pair: GraphListPair
    deleted: int
    vertex_map: Mapping[int, int]
    removed: tuple[tuple[int, int], ...]
    target: int

    def condition(self, condition) -> BoundaryCondition:
        return as_condition(condition).relabel(self.vertex_map)


def _check_index(pair: GraphListPair, v: int, i: int) -> list[int]:
    nbrs = pair.neighbors(v)
    if not 1 <= i <= len(nbrs):
        raise IndexError(f"neighbor index {i} out of range 1..{len(nbrs)} for vertex {v}")
    return nbrs


def _check_color(pair: GraphListPair, v: int, j: int) -> None:
    if j not in pair.lists[v]:
        raise ValueError(f"color {j} not in list of vertex {v}")


def _reduce(pair, v, nbrs, i, before, after) -> ReducedInstance:
    drops = {}
    removed = []
    for k, u in enumerate(nbrs, start=1):
        c = before if k < i else after if k > i else None
        if c is not None and c in pair.lists[u]:
            drops[u] = (c,)
            removed.append((u, c))
    reduced, vmap = delete_vertices(pair, (v,), drops)
    return ReducedInstance(reduced, v, vmap, tuple(removed), vmap[nbrs[i - 1]])


def reduce_pairwise(pair: GraphListPair, v: int, j1: int, j2: int, i: int) -> ReducedInstance:
    """Delete ``v``; drop ``j1`` from ``L(v_k)`` for ``k < i`` and ``j2`` for ``k > i``."""
    _check_color(pair, v, j1)
    _check_color(pair, v, j2)
    nbrs = _check_index(pair, v, i)
    return _reduce(pair, v, nbrs, i, j1, j2)


def reduce_single(pair: GraphListPair, v: int, j: int, i: int) -> ReducedInstance:
    """Delete ``v``; drop ``j`` from ``L(v_k)`` for ``k < i``."""
    _check_color(pair, v, j)
    nbrs = _check_index(pair, v, i)
    return _reduce(pair, v, nbrs, i, j, None)


def ratio_exact(pair: GraphListPair, v: int, j1: int, j2: int, condition=None) -> Fraction:
    """``P(c(v)=j1) / P(c(v)=j2)`` as a telescoping product over neighbors.

    Each factor is ``(1 - P(c(v_i)=j1)) / (1 - P(c(v_i)=j2))`` on the
    instance from :func:`reduce_pairwise`, with the sub-marginals taken from
    the exact oracle.  The identity needs every intermediate weight to be
    positive; a vanishing one raises :class:`DegenerateInstance`, except at
    the last factor, where it means the ratio is 0.
    """
    condition = as_condition(condition)
    _check_color(pair, v, j1)
    _check_color(pair, v, j2)
    if v in condition:
        raise ValueError(f"vertex {v} is assigned by the condition")
    if count_colorings(pair, condition) == 0:
        raise UncolorableRegion(f"no proper list coloring extends {condition!r}")
    if j1 == j2:
        return Fraction(1)
    nbrs = pair.neighbors(v)
    ratio = Fraction(1)
    for i in range(1, len(nbrs) + 1):
        red = _reduce(pair, v, nbrs, i, j1, j2)
        cond = red.condition(condition)
        try:
            num = 1 - marginal(red.pair, cond, red.target, j1)
            den = 1 - marginal(red.pair, cond, red.target, j2)
        except UncolorableRegion as exc:
            raise DegenerateInstance(f"P(c({v})={j2}) vanishes; ratio undefined") from exc
        if num == 0:
            if i == len(nbrs):
                return Fraction(0)
            # an intermediate weight vanishes, so the next factor is 0/0
            raise DegenerateInstance(f"telescoping weight {i} of {len(nbrs)} vanishes at vertex {v}")
        if den == 0:
            raise DegenerateInstance(f"factor {i} has zero denominator: P(c({v})={j2}) vanishes")
        ratio *= num / den
    return ratio


# ------------------------------------------------------------- recursion

BASES = ("uniform", "oracle")


@lru_cache(maxsize=500_000)
def _vector(pair: GraphListPair, v: int, condition: BoundaryCondition, depth: int, base: str) -> tuple:
    lst = sorted(pair.lists[v])
    if v in condition:
        return tuple((c, 1.0 if c == condition[v] else 0.0) for c in lst)
    if depth <= 0:
        if base == "oracle":
            return tuple(marginal_vector(pair, condition, v).as_floats().items())
        return tuple((c, 1.0 / len(lst)) for c in lst)
    nbrs = pair.neighbors(v)
    weights = []
    for k in lst:
        prod = 1.0
        for i, u in enumerate(nbrs, start=1):
            if k not in pair.lists[u]:
                continue
            red = _reduce(pair, v, nbrs, i, k, None)
            sub = dict(_vector(red.pair, red.target, red.condition(condition), depth - 1, base))
            prod *= 1.0 - sub[k]
            if prod == 0.0:
                break
        weights.append(prod)
    total = math.fsum(weights)
    if not total > 0.0:
        raise UncolorableRegion(f"recursion at vertex {v} gives zero total weight")
    return tuple((c, w / total) for c, w in zip(lst, weights))


def recursive_vector(pair: GraphListPair, v: int, condition=None, depth: int = 0, base: str = "uniform") -> dict[int, float]:
    """Marginal vector at ``v`` from the normalized product recursion.

    ``depth`` levels of the recursion are unrolled.  At depth 0 a free vertex
    gets ``base``: ``"uniform"`` over its current list, or ``"oracle"`` for
    the exact marginal.  Assigned vertices return their indicator at any
    depth.  With ``depth`` at least the number of free vertices in ``v``'s
    component every leaf is isolated or assigned, and the result is exact.
    """
    if base not in BASES:
        raise ValueError(f"base must be one of {BASES}")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    return dict(_vector(pair, v, as_condition(condition), depth, base))


def marginal_recursive(pair: GraphListPair, v: int, j: int, condition=None, depth: int = 0, base: str = "uniform") -> float:
    """Recursive estimate of ``P(c(v) = j | condition)``; see :func:`recursive_vector`."""
    _check_color(pair, v, j)
    return recursive_vector(pair, v, condition, depth, base)[j]


# ------------------------------------------------------- error functional


@dataclass(frozen=True)
class ErrorValue:
    value: float
    argmax: int
    argmin: int
    max_log: float = field(default=0.0)
    min_log: float = field(default=0.0)


def error_functional(x: Mapping[int, float], y: Mapping[int, float]) -> ErrorValue:
    """``max_j log(x_j/y_j) - min_j log(x_j/y_j)`` with its maximizing and minimizing colors.

    Ties go to the smallest color.  Exact (``Fraction``) inputs are compared
    exactly; only the final logarithm is floating point.
    """
    vx, vy = getattr(x, "vertex", None), getattr(y, "vertex", None)
    if vx is not None and vy is not None and vx != vy:
        raise ValueError(f"vectors belong to different vertices {vx} and {vy}")
    if set(x) != set(y):
        raise ValueError("vectors have different supports")
    if not x:
        raise ValueError("empty vectors")
    for name, vec in (("x", x), ("y", y)):
        bad = [c for c in vec if not vec[c] > 0]
        if bad:
            raise DomainError(f"{name} has nonpositive entries at colors {sorted(bad)}")
    colors = sorted(x)
    ratio = {c: x[c] / y[c] for c in colors}
    hi = lo = colors[0]
    for c in colors[1:]:
        if ratio[c] > ratio[hi]:
            hi = c
        if ratio[c] < ratio[lo]:
            lo = c
    spread = ratio[hi] / ratio[lo]
    return ErrorValue(
        value=max(0.0, math.log(spread)),
        argmax=hi,
        argmin=lo,
        max_log=math.log(ratio[hi]),
        min_log=math.log(ratio[lo]),
    )


# ---------------------------------------------------------- approx count


class ApproxCountError(ListColoringError):
    def __init__(self, message: str, trace):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class ApproxCount:
    """Estimate ``z`` and its log; ``trace`` holds ``(vertex, color, marginal)`` per step."""

    z: float
    log_z: float
    trace: tuple[tuple[int, int, float], ...]


def approx_count(pair: GraphListPair, depth: int, base: str = "uniform") -> ApproxCount:
    """Estimate the number of colorings as a product of inverse marginals.

    Vertices are fixed in ascending order, each to the color with the largest
    recursive marginal.  A fixed vertex is deleted and its color removed from
    its neighbors' lists, which leaves the law of the rest unchanged.  No
    accuracy guarantee is attached; with ``depth >= n`` the recursion is exact.
    """
    current = pair
    ids = {v: v for v in pair.vertices}
    log_z = 0.0
    trace = []
    for v in pair.vertices:
        w = ids[v]
        if not current.lists[w]:
            raise ApproxCountError(f"list of vertex {v} emptied by earlier choices", tuple(trace))
        try:
            vec = recursive_vector(current, w, None, depth, base)
        except UncolorableRegion as exc:
            raise ApproxCountError(f"recursion failed at vertex {v}: {exc}", tuple(trace)) from exc
        color = min(vec, key=lambda c: (-vec[c], c))
        p = vec[color]
        if not p > 0.0:
            raise ApproxCountError(f"nonpositive marginal at vertex {v}", tuple(trace))
        trace.append((v, color, p))
        log_z -= math.log(p)
        drops = {u: (color,) for u in current.adj[w] if color in current.lists[u]}
        current, vmap = delete_vertices(current, (w,), drops)
        ids = {u: vmap[i] for u, i in ids.items() if i in vmap}
    try:
        z = math.exp(log_z)
    except OverflowError:
        z = math.inf
    return ApproxCount(z, log_z, tuple(trace))
