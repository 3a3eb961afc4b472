"""The list-size condition, its threshold constant and the contraction rate."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .graph import GraphListPair, is_triangle_free

BETA_MIN = 2.0 + math.sqrt(2.0)
"""sqrt(2) / (sqrt(2) - 1), rationalized."""


def alpha_star(tol: float = 1e-12) -> float:
    """Root of ``x * exp(-1/x) = 1`` by bisection on ``[1, 3]``.

    The left side is increasing on the bracket, so plain bisection is safe.
    """
    lo, hi = 1.0, 3.0
    x = 0.5 * (lo + hi)
    for _ in range(200):
        x = 0.5 * (lo + hi)
        r = x * math.exp(-1.0 / x) - 1.0
        if abs(r) <= tol * 1e-2 or hi - lo <= 4 * math.ulp(x):
            break
        if r < 0:
            lo = x
        else:
            hi = x
    return x


def product_term(alpha: float, beta: float) -> float:
    """``(1 - 1/beta) * alpha * exp(-(1 + 1/beta) / alpha)``."""
    return (1.0 - 1.0 / beta) * alpha * math.exp(-(1.0 + 1.0 / beta) / alpha)


def epsilon_of(alpha: float, beta: float) -> float:
    """Per-level contraction rate ``eps`` with ``1 - eps = 1 / product_term``."""
    if alpha <= 0 or beta <= 1:
        raise DomainError(f"need alpha > 0 and beta > 1, got alpha={alpha}, beta={beta}")
    p = product_term(alpha, beta)
    if not p > 1.0:
        raise DomainError(f"product term {p:.6g} <= 1 for alpha={alpha}, beta={beta}: no valid epsilon")
    return 1.0 - 1.0 / p


@dataclass(frozen=True)
class AssumptionReport:
    alpha: float
    beta: float
    satisfied: bool
    epsilon: float | None
    slack: tuple[float, ...]
    failures: tuple[str, ...] = ()
    failing_vertices: tuple[int, ...] = field(default=())

    def summary(self) -> str:
        lines = [
            f"alpha={self.alpha!r} beta={self.beta!r}",
            f"satisfied={self.satisfied}",
            f"epsilon={self.epsilon!r}",
            f"min_slack={min(self.slack, default=float('nan'))!r}",
        ]
        lines += [f"failure={reason}" for reason in self.failures]
        if self.failing_vertices:
            lines.append("failing_vertices=" + ",".join(map(str, self.failing_vertices)))
        return "\n".join(lines)


def check_assumption(pair: GraphListPair, alpha: float, beta: float) -> AssumptionReport:
    """Evaluate every clause of the list-size assumption; never raises.

    Failure reasons are reported in the fixed order ``triangle``, ``alpha``,
    ``beta``, ``product``, ``list_size``.
    """
    failures = []
    if not is_triangle_free(pair):
        failures.append("triangle")
    if not alpha > alpha_star():
        failures.append("alpha")
    if not beta >= BETA_MIN:
        failures.append("beta")
    if not (beta > 0 and product_term(alpha, beta) > 1.0):
        failures.append("product")
    slack = tuple(len(pair.lists[v]) - (alpha * pair.degree(v) + beta) for v in pair.vertices)
    # tolerate rounding in alpha * deg + beta
    bad = tuple(v for v, s in enumerate(slack) if s < -1e-12)
    if bad:
        failures.append("list_size")
    ok = not failures
    # the rate depends only on (alpha, beta), so report it whenever it exists
    rate_ok = "product" not in failures and beta > 1
    return AssumptionReport(
        alpha=alpha,
        beta=beta,
        satisfied=ok,
        epsilon=epsilon_of(alpha, beta) if rate_ok else None,
        slack=slack,
        failures=tuple(failures),
        failing_vertices=bad,
    )
