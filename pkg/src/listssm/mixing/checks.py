"""Verifiers for the marginal bounds, the contraction step and the
total-variation scaling statements, all evaluated with the exact oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from ..assumption import check_assumption
from ..errors import DomainError
from ..graph import GraphListPair, Region
from ..oracle import as_condition, count_colorings, joint_law, marginal_vector, proper_colorings_of, tv_distance_restricted
from ..recursion import error_functional, reduce_pairwise
from .reduction import absorb

TOL = 1e-9


@dataclass
class Report:
    """Outcome of one verifier call; ``details`` keeps insertion order."""

    check: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)

    def summary(self) -> str:
        lines = [f"check={self.check}", f"passed={self.passed}"]
        for k, v in self.details.items():
            if isinstance(v, (list, tuple)):
                v = ",".join(_fmt(x) for x in v)
            else:
                v = _fmt(v)
            lines.append(f"{k}={v}")
        return "\n".join(lines)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _require_assumption(pair, alpha, beta):
    rep = check_assumption(pair, alpha, beta)
    if not rep.satisfied:
        raise DomainError(f"assumption fails: {', '.join(rep.failures)}")
    return rep


def ratio_deviation(x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> float:
    """``max_j |x_j / y_j - 1|`` over colors where either side is positive.

    A color with ``y_j = 0 < x_j`` makes the deviation infinite.
    """
    worst = Fraction(0)
    for j in set(x) | set(y):
        a, b = x.get(j, 0), y.get(j, 0)
        if a == 0 and b == 0:
            continue
        if b == 0:
            return math.inf
        worst = max(worst, abs(Fraction(a) / Fraction(b) - 1))
    return float(worst)


# ------------------------------------------------------------- bounds


def bound_values(alpha: float, beta: float, m: int, q: int, max_degree: int) -> dict[str, float]:
    """Right-hand sides of the three marginal bounds; ``ub`` is ``inf`` for ``m = 0``."""
    k = math.exp(-(1.0 + 1.0 / beta) / alpha)
    return {
        "easyub": 1.0 / beta,
        "ub": 1.0 / (m * alpha * k) if m >= 1 else math.inf,
        "lb": (1.0 - 1.0 / beta) ** max_degree / q,
    }


def bounds_check(pair: GraphListPair, v: int, conditions: Iterable, alpha: float, beta: float, require_assumption: bool = True) -> Report:
    """Check the upper bounds ``1/beta`` and ``1/(m alpha e^{-(1+1/beta)/alpha})``
    and the lower bound ``(1-1/beta)^Delta / q`` on every marginal at ``v``.

    Assigned vertices are absorbed into their neighbors' lists first, so
    ``m`` counts the free neighbors of ``v`` and colors used by assigned
    neighbors (probability 0) are excluded.  ``q`` and ``Delta`` are those
    of the input pair.
    """
    if require_assumption:
        _require_assumption(pair, alpha, beta)
    worst = {"easyub": math.inf, "ub": math.inf, "lb": math.inf}
    violations = {"easyub": 0, "ub": 0, "lb": 0}
    checked = 0
    for cond in conditions:
        cond = as_condition(cond)
        if v in cond:
            raise ValueError(f"vertex {v} is assigned by a condition")
        st = absorb(pair, cond)
        w = st[v]
        m = st.pair.degree(w)
        rhs = bound_values(alpha, beta, m, pair.q, pair.max_degree)
        vec = marginal_vector(st.pair, None, w)
        for j, p in vec.items():
            p = float(p)
            checked += 1
            for name, slack in (("easyub", rhs["easyub"] - p), ("ub", rhs["ub"] - p), ("lb", p - rhs["lb"])):
                worst[name] = min(worst[name], slack)
                if slack < -TOL:
                    violations[name] += 1
    passed = not any(violations.values())
    return Report("bounds", passed, {
        "vertex": v,
        "marginals_checked": checked,
        "worst_slack_easyub": worst["easyub"],
        "worst_slack_ub": worst["ub"],
        "worst_slack_lb": worst["lb"],
        "violations_easyub": violations["easyub"],
        "violations_ub": violations["ub"],
        "violations_lb": violations["lb"],
    })


# -------------------------------------------------------- contraction


def _positive(vec) -> dict[int, Fraction]:
    return {j: p for j, p in vec.items() if p > 0}


def contraction_check(pair: GraphListPair, v: int, c1, c2, alpha: float, beta: float, require_assumption: bool = True) -> Report:
    """Check ``E(x, y) / m <= (1 - eps) * max_{i: m_i > 0} E(x_i, y_i) / m_i``.

    Assignments shared by ``c1`` and ``c2`` are absorbed first; the
    disagreement set stays as a condition and must not be adjacent to ``v``.  A
    neighbor whose two marginal vectors have different supports contributes
    ``E = inf`` (the bound is then vacuous).
    """
    rep = _require_assumption(pair, alpha, beta) if require_assumption else check_assumption(pair, alpha, beta)
    eps = rep.epsilon
    if eps is None:
        raise DomainError("no contraction rate: product term <= 1")
    c1, c2 = as_condition(c1), as_condition(c2)
    if v in c1 or v in c2:
        raise ValueError(f"vertex {v} is assigned by a condition")
    agree = {u: c for u, c in c1.items() if c2.get(u) == c}
    disagree = sorted(set(c1) ^ set(c2) | {u for u in c1 if u in c2 and c1[u] != c2[u]})
    touching = sorted(set(disagree) & pair.adj[v])
    if touching:
        raise ValueError(f"disagreement vertices {touching} are adjacent to vertex {v}")
    st = absorb(pair, agree)
    d1 = st.restrict(c1.restricted_to(disagree))
    d2 = st.restrict(c2.restricted_to(disagree))
    w = st[v]
    g = st.pair
    m = g.degree(w)
    details: dict[str, Any] = {"vertex": v, "epsilon": eps, "m": m, "disagreement": disagree}

    if m == 0:
        details.update(lhs=0.0, rhs=0.0, trivial=True)
        return Report("contraction", True, details)

    x, y = _positive(marginal_vector(g, d1, w)), _positive(marginal_vector(g, d2, w))
    if set(x) != set(y):
        raise ValueError(f"disagreement adjacent to vertex {v}: marginal supports differ")
    ev = error_functional(x, y)
    lhs = ev.value / m
    details.update(j1=ev.argmax, j2=ev.argmin, E=ev.value, lhs=lhs)
    if ev.argmax == ev.argmin or ev.value == 0.0:
        details.update(rhs=0.0, trivial=True)
        return Report("contraction", lhs <= TOL, details)

    m_i, e_i = [], []
    best = None
    for i in range(1, m + 1):
        red = reduce_pairwise(g, w, ev.argmax, ev.argmin, i)
        mi = red.pair.degree(red.target)
        m_i.append(mi)
        if mi == 0:
            e_i.append(0.0)
            continue
        xi = _positive(marginal_vector(red.pair, red.condition(d1), red.target))
        yi = _positive(marginal_vector(red.pair, red.condition(d2), red.target))
        ei = error_functional(xi, yi).value if set(xi) == set(yi) else math.inf
        e_i.append(ei)
        best = ei / mi if best is None else max(best, ei / mi)
    rhs = 0.0 if best is None else (1.0 - eps) * best
    details.update(m_i=m_i, E_i=e_i, rhs=rhs, slack=rhs - lhs, trivial=False)
    return Report("contraction", lhs <= rhs + TOL, details)


# ----------------------------------------------------- TV scaling checks


def _check_region(pair, psi, lam, conds):
    region = psi if isinstance(psi, Region) else Region.of(pair, psi)
    lam = frozenset(lam)
    if not lam <= region.vertices:
        raise ValueError("lambda must be a subset of psi")
    for c in conds:
        inside = region.vertices & set(c)
        if inside:
            raise ValueError(f"condition assigns region vertices {sorted(inside)}")
    return region, lam


def sequential_epsilon(pair: GraphListPair, lam: Iterable[int], c1, c2) -> float:
    """Largest ``|P(c(v_k)=j | J, c1) / P(c(v_k)=j | J, c2) - 1|`` over the
    vertices ``v_k`` of ``lam`` in ascending order, their colors ``j``, and the
    colorings ``J`` of ``v_1..v_{k-1}`` that are possible under both conditions.
    """
    c1, c2 = as_condition(c1), as_condition(c2)
    vs = sorted(set(lam))
    worst = 0.0
    for k, vk in enumerate(vs):
        prefix = vs[:k]
        for sigma in proper_colorings_of(pair, prefix):
            e1, e2 = c1.extend(sigma), c2.extend(sigma)
            if count_colorings(pair, e1) == 0 or count_colorings(pair, e2) == 0:
                continue
            dev = ratio_deviation(marginal_vector(pair, e1, vk), marginal_vector(pair, e2, vk))
            worst = max(worst, dev)
    return worst


def tv_scaling_check(pair: GraphListPair, psi, lam, c1, c2) -> Report:
    """Check ``||mu1 - mu2||_lam <= |lam| * eps``.

    ``eps`` is the largest single-vertex ratio deviation met along the
    chain-rule decomposition over ``lam`` (:func:`sequential_epsilon`), which
    is the quantity the inductive bound uses.  The plain single-vertex
    deviation is reported alongside.
    """
    c1, c2 = as_condition(c1), as_condition(c2)
    _, lam = _check_region(pair, psi, lam, (c1, c2))
    tv = tv_distance_restricted(pair, psi if not isinstance(psi, Region) else psi.vertices, c1, c2, lam)
    eps = sequential_epsilon(pair, lam, c1, c2)
    single = max((ratio_deviation(marginal_vector(pair, c1, u), marginal_vector(pair, c2, u)) for u in lam), default=0.0)
    bound = len(lam) * eps
    return Report("tvscale", float(tv) <= bound + TOL, {
        "size": len(lam),
        "tv": tv,
        "epsilon": eps,
        "epsilon_single": single,
        "bound": bound,
        "slack": bound - float(tv),
    })


def single_point_corollary_check(pair: GraphListPair, psi, lam, f: int, j1: int, j2: int, base=None) -> Report:
    """Check ``||mu1 - mu2||_lam <= 2 * eps_f`` for conditions differing only at ``f``.

    ``mu_i`` conditions on ``base`` plus ``c(f) = j_i``.  ``eps_f`` is the
    largest ``|P(c(f)=j | sigma) / P(c(f)=j) - 1|`` over ``j in {j1, j2}`` and
    colorings ``sigma`` of ``lam`` with positive probability, all under
    ``base`` with ``f`` left free.
    """
    base = as_condition(base)
    if f in base:
        raise ValueError(f"base condition must leave f={f} free")
    region = psi if isinstance(psi, Region) else Region.of(pair, psi)
    if f not in region.boundary:
        raise ValueError(f"vertex {f} is not on the boundary of psi")
    c1, c2 = base.extend({f: j1}), base.extend({f: j2})
    _, lam = _check_region(pair, region, lam, (c1, c2))
    tv = tv_distance_restricted(pair, region.vertices, c1, c2, lam)
    prior = marginal_vector(pair, base, f)
    eps = 0.0
    for sigma, p in joint_law(pair, base, lam).items():
        assignment = dict(zip(sorted(lam), sigma))
        post = marginal_vector(pair, base.extend(assignment), f)
        for j in {j1, j2}:
            eps = max(eps, float(abs(post[j] / prior[j] - 1)))
    bound = 2 * eps
    return Report("corollary", float(tv) <= bound + TOL, {
        "f": f,
        "j1": j1,
        "j2": j2,
        "tv": tv,
        "epsilon_f": eps,
        "bound": bound,
        "slack": bound - float(tv),
    })
