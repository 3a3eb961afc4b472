"""Triangle-free instance families with list policies."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Mapping

from .errors import ConfigurationError
from .graph import GraphListPair, is_triangle_free

FAMILIES = ("path", "cycle-even", "complete-bipartite", "random-tree", "grid", "random-triangle-free")

_REQUIRED = {
    "path": ("n",),
    "cycle-even": ("n",),
    "complete-bipartite": ("a", "b"),
    "random-tree": ("n",),
    "grid": ("rows", "cols"),
    "random-triangle-free": ("n",),
}


@dataclass(frozen=True)
class ListPolicy:
    """How lists are drawn from the palette ``{1..q}``.

    ``kind="uniform"`` gives every vertex ``size`` colors; ``kind="assumption"``
    gives vertex ``v`` exactly ``ceil(alpha * deg(v) + beta)`` colors.
    """

    kind: str = "uniform"
    q: int = 3
    size: int | None = None
    alpha: float | None = None
    beta: float | None = None

    @classmethod
    def uniform(cls, size: int, q: int | None = None) -> ListPolicy:
        return cls("uniform", q if q is not None else size, size=size)

    @classmethod
    def assumption(cls, alpha: float, beta: float, q: int) -> ListPolicy:
        return cls("assumption", q, alpha=alpha, beta=beta)

    def size_for(self, degree: int) -> int:
        if self.kind == "uniform":
            return self.size if self.size is not None else self.q
        if self.kind == "assumption":
            # 1e-9 keeps float noise from pushing an integer target up by one
            return max(1, math.ceil(self.alpha * degree + self.beta - 1e-9))
        raise ConfigurationError(f"unknown list policy {self.kind!r}")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: Mapping[str, float] = field(default_factory=dict)
    lists: ListPolicy = field(default_factory=ListPolicy)
    seed: int = 0


def _edges(family: str, params: Mapping, rng: random.Random) -> tuple[int, list[tuple[int, int]]]:
    if family not in FAMILIES:
        raise ConfigurationError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    missing = [k for k in _REQUIRED[family] if k not in params]
    if missing:
        raise ConfigurationError(f"family {family} needs parameters {missing}")

    if family == "path":
        n = int(params["n"])
        if n < 1:
            raise ConfigurationError("path needs n >= 1")
        return n, [(i, i + 1) for i in range(n - 1)]

    if family == "cycle-even":
        n = int(params["n"])
        odd_ok = bool(params.get("allow_odd", False))
        if n < 4 or (n % 2 and not (odd_ok and n >= 5)):
            raise ConfigurationError(f"cycle length {n} invalid: need even n >= 4, or odd n >= 5 with allow_odd")
        return n, [(i, (i + 1) % n) for i in range(n)]

    if family == "complete-bipartite":
        a, b = int(params["a"]), int(params["b"])
        if a < 1 or b < 1:
            raise ConfigurationError("complete-bipartite needs a, b >= 1")
        return a + b, [(i, a + k) for i in range(a) for k in range(b)]

    if family == "random-tree":
        n = int(params["n"])
        if n < 1:
            raise ConfigurationError("random-tree needs n >= 1")
        return n, [(rng.randrange(i), i) for i in range(1, n)]

    if family == "grid":
        r, c = int(params["rows"]), int(params["cols"])
        if r < 1 or c < 1:
            raise ConfigurationError("grid needs rows, cols >= 1")
        edges = []
        for i in range(r):
            for k in range(c):
                v = i * c + k
                if k + 1 < c:
                    edges.append((v, v + 1))
                if i + 1 < r:
                    edges.append((v, v + c))
        return r * c, edges

    # random-triangle-free: propose pairs in random order, reject triangle closers
    n = int(params["n"])
    p = float(params.get("p", 0.5))
    if n < 1 or not 0.0 <= p <= 1.0:
        raise ConfigurationError("random-triangle-free needs n >= 1 and 0 <= p <= 1")
    max_degree = params.get("max_degree")
    pairs = [(u, w) for u in range(n) for w in range(u + 1, n)]
    rng.shuffle(pairs)
    nbrs = [set() for _ in range(n)]
    edges = []
    for u, w in pairs:
        if rng.random() >= p or nbrs[u] & nbrs[w]:
            continue
        if max_degree is not None and max(len(nbrs[u]), len(nbrs[w])) >= max_degree:
            continue
        nbrs[u].add(w)
        nbrs[w].add(u)
        edges.append((u, w))
    return n, sorted(edges)


def generate(spec: GeneratorSpec) -> GraphListPair:
    """Deterministic instance for ``spec``; lists are sampled without replacement."""
    rng = random.Random(spec.seed)
    n, edges = _edges(spec.family, spec.params, rng)
    degree = [0] * n
    for u, w in edges:
        degree[u] += 1
        degree[w] += 1
    palette = list(range(1, spec.lists.q + 1))
    lists = []
    for v in range(n):
        s = spec.lists.size_for(degree[v])
        if s > spec.lists.q:
            raise ConfigurationError(f"vertex {v} needs {s} colors but the palette has only {spec.lists.q}")
        if s < 1:
            raise ConfigurationError("list size must be positive")
        lists.append(palette if s == spec.lists.q else sorted(rng.sample(palette, s)))
    pair = GraphListPair.build(n, edges, lists)
    assert is_triangle_free(pair)
    return pair
