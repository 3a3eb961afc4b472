"""Boundary-influence experiments, the theoretical decay envelope, and
log-linear fits of observed decay."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..assumption import check_assumption
from ..errors import DomainError, FitError, UncolorableRegion
from ..graph import INF, GraphListPair, Region, distance
from ..oracle import BoundaryCondition, count_colorings, marginal_vector
from .checks import ratio_deviation
from .reduction import strip_near_boundary

FLOOR = 1e-14
D0_LIMIT = 1_000_000
CSV_HEADER = ("distance", "epsilon_observed", "epsilon_envelope", "instance_id", "seed")


@dataclass(frozen=True)
class DecaySample:
    distance: int
    epsilon: float
    instance_id: str = ""
    seed: int = 0
    index: int = 0


@dataclass
class DecayRun:
    """Samples from one experiment plus the number of rejected draws."""

    samples: list[DecaySample]
    rejected: int = 0
    strip_checked: int = 0

    def __iter__(self):
        return iter(self.samples)

    def __len__(self):
        return len(self.samples)

    def __getitem__(self, i):
        return self.samples[i]


# ------------------------------------------------------------ envelope


@dataclass(frozen=True)
class Envelope:
    F: float
    gamma: float
    d0: int
    B: float
    log_B: float
    epsilon: float

    def __call__(self, d: float) -> float:
        try:
            return math.exp(self.log_B - self.gamma * d)
        except OverflowError:
            return math.inf


def theoretical_envelope(pair: GraphListPair, alpha: float, beta: float) -> Envelope:
    """Constants ``(F, gamma, d0, B)`` of the exponential bound ``B e^{-gamma d}``.

    ``F = 2 Delta (log q - Delta log(1 - 1/beta))``, ``gamma = -log(1 - eps)``,
    ``d0`` is the least ``d >= 0`` with ``exp(F r^d) <= 1 + 2 F r^d`` where
    ``r = 1 - eps``, and ``B = max(e^{F + gamma d0}, 2F)``.
    """
    rep = check_assumption(pair, alpha, beta)
    if not rep.satisfied:
        raise DomainError(f"assumption fails: {', '.join(rep.failures)}")
    eps = rep.epsilon
    delta, q = pair.max_degree, pair.q
    F = 2.0 * delta * (math.log(q) - delta * math.log(1.0 - 1.0 / beta))
    gamma = -math.log(1.0 - eps)
    r = 1.0 - eps
    d0 = None
    for d in range(D0_LIMIT + 1):
        x = F * r**d
        if x < 700.0 and math.exp(x) <= 1.0 + 2.0 * x:
            d0 = d
            break
    if d0 is None:
        raise DomainError(f"no d0 found within {D0_LIMIT} steps")
    log_B = max(F + gamma * d0, math.log(2.0 * F) if F > 0 else -math.inf)
    try:
        B = math.exp(log_B)
    except OverflowError:
        B = math.inf
    return Envelope(F=F, gamma=gamma, d0=d0, B=B, log_B=log_B, epsilon=eps)


# ----------------------------------------------------------------- fit


@dataclass(frozen=True)
class DecayFit:
    B: float
    gamma: float
    residual: float
    n_used: int
    theoretical: Envelope | None = None


def fit_decay(samples: Iterable[DecaySample], envelope: Envelope | None = None) -> DecayFit:
    """Least-squares line through ``(d, log eps)``; returns ``B = e^intercept``
    and ``gamma = -slope``.  Samples at or below :data:`FLOOR` are dropped."""
    pts = [(s.distance, s.epsilon) for s in samples if math.isfinite(s.epsilon) and s.epsilon > FLOOR]
    if len(pts) < 2 or len({d for d, _ in pts}) < 2:
        raise FitError("need samples above the floor at two or more distinct distances")
    d = np.array([p[0] for p in pts], dtype=float)
    y = np.log(np.array([p[1] for p in pts], dtype=float))
    slope, intercept = np.polyfit(d, y, 1)
    resid = y - (slope * d + intercept)
    return DecayFit(
        B=float(np.exp(intercept)),
        gamma=float(-slope),
        residual=float(np.sqrt(np.mean(resid**2))),
        n_used=len(pts),
        theoretical=envelope,
    )


# ------------------------------------------------------------ sampling


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for sample ``index`` of an experiment seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def random_condition(pair: GraphListPair, vertices: Iterable[int], rng: np.random.Generator, free_prob: float = 0.2) -> dict[int, int]:
    """Each vertex is left free with probability ``free_prob``, else gets a
    uniform color from its list."""
    out = {}
    for u in sorted(vertices):
        if rng.random() < free_prob:
            continue
        lst = sorted(pair.lists[u])
        out[u] = lst[int(rng.integers(len(lst)))]
    return out


def _same_law(a, b) -> bool:
    # absorbed colors vanish from the list instead of carrying probability 0
    return all(a.get(j, 0) == b.get(j, 0) for j in set(a) | set(b))


def _region(pair, psi) -> Region:
    return psi if isinstance(psi, Region) else Region.of(pair, psi)


def wsm_experiment(pair: GraphListPair, psi, v: int, samples: int, seed: int, free_prob: float = 0.2, instance_id: str = "", max_tries: int = 1000) -> DecayRun:
    """Boundary influence at ``v`` under two independent conditions on everything outside ``psi``.

    Each sample records ``d(v, boundary)`` and the deviation
    ``max_j |P(c(v)=j | C1) / P(c(v)=j | C2) - 1|``.  Uncolorable draws are
    redrawn and counted in :attr:`DecayRun.rejected`.
    """
    region = _region(pair, psi)
    if v not in region.vertices:
        raise ValueError(f"vertex {v} is not in the region")
    if not region.boundary:
        raise ValueError("region has an empty boundary")
    d = distance(pair, v, region.boundary)
    if d == INF:
        raise ValueError("boundary unreachable from v")
    outside = [u for u in pair.vertices if u not in region.vertices]
    out, rejected = [], 0
    for k in range(samples):
        rng = sample_rng(seed, k)
        for _ in range(max_tries):
            c1 = BoundaryCondition(random_condition(pair, outside, rng, free_prob))
            c2 = BoundaryCondition(random_condition(pair, outside, rng, free_prob))
            if count_colorings(pair, c1) and count_colorings(pair, c2):
                break
            rejected += 1
        else:
            raise UncolorableRegion(f"no colorable draw in {max_tries} tries for sample {k}")
        eps = ratio_deviation(marginal_vector(pair, c1, v), marginal_vector(pair, c2, v))
        out.append(DecaySample(int(d), eps, instance_id, seed, k))
    return DecayRun(out, rejected)


def ssm_experiment(pair: GraphListPair, psi, v: int, w: Iterable[int], samples: int, seed: int, free_prob: float = 0.2, instance_id: str = "", strip: bool = True, max_tries: int = 1000) -> DecayRun:
    """Like :func:`wsm_experiment`, but the two conditions share one draw
    outside ``psi`` except on ``w``, where they are drawn separately and
    must differ.  The recorded distance is ``d(v, w)``.

    With ``strip`` the marginals are computed on the instance with the
    agreeing boundary vertices closer than ``d(v, w)`` absorbed, and checked
    to match the unstripped ones exactly.
    """
    region = _region(pair, psi)
    w = frozenset(w)
    if v not in region.vertices:
        raise ValueError(f"vertex {v} is not in the region")
    if not w or not w <= region.boundary:
        raise ValueError("w must be a nonempty subset of the boundary")
    d = distance(pair, v, w)
    if d == INF:
        raise ValueError("w unreachable from v")
    common_vs = [u for u in pair.vertices if u not in region.vertices and u not in w]
    out, rejected, checked = [], 0, 0
    for k in range(samples):
        rng = sample_rng(seed, k)
        for _ in range(max_tries):
            common = random_condition(pair, common_vs, rng, free_prob)
            a = random_condition(pair, w, rng, free_prob)
            b = random_condition(pair, w, rng, free_prob)
            if a == b:
                rejected += 1
                continue
            c1 = BoundaryCondition({**common, **a})
            c2 = BoundaryCondition({**common, **b})
            if count_colorings(pair, c1) and count_colorings(pair, c2):
                break
            rejected += 1
        else:
            raise UncolorableRegion(f"no valid draw in {max_tries} tries for sample {k}")
        x = marginal_vector(pair, c1, v)
        y = marginal_vector(pair, c2, v)
        if strip:
            st = strip_near_boundary(pair, region, v, common, int(d))
            xs = marginal_vector(st.pair, st.restrict(c1), st[v])
            ys = marginal_vector(st.pair, st.restrict(c2), st[v])
            if not (_same_law(xs, x) and _same_law(ys, y)):
                raise AssertionError(f"stripping changed the marginals at {v} (sample {k})")
            checked += 1
            x, y = xs, ys
        out.append(DecaySample(int(d), ratio_deviation(x, y), instance_id, seed, k))
    return DecayRun(out, rejected, checked)


# ----------------------------------------------------------------- csv


def format_csv(samples: Sequence[DecaySample], envelope: Envelope | None = None) -> str:
    """CSV text with ``.`` decimals and shortest round-trip float formatting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in samples:
        env = repr(envelope(s.distance)) if envelope is not None else ""
        writer.writerow((s.distance, repr(float(s.epsilon)), env, s.instance_id, s.seed))
    return buf.getvalue()


def write_csv(samples: Sequence[DecaySample], path, envelope: Envelope | None = None) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        fh.write(format_csv(samples, envelope))


def envelope_violations(samples: Iterable[DecaySample], envelope: Envelope) -> list[DecaySample]:
    return [s for s in samples if not s.epsilon <= envelope(s.distance)]
