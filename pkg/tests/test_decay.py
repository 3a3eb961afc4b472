import math

import numpy as np
import pytest

from listssm import DomainError, FitError, GeneratorSpec, ListPolicy, epsilon_of, generate
from listssm.mixing import (
    DecaySample,
    envelope_violations,
    fit_decay,
    format_csv,
    ssm_experiment,
    theoretical_envelope,
    write_csv,
    wsm_experiment,
)
from listssm.mixing.decay import CSV_HEADER

from conftest import path_pair, star_pair

POLICY = ListPolicy.assumption(2, 10, 20)


def wsm_path(ell, seed=0):
    """Path of 2*ell+1 vertices; v in the middle, both ends on the boundary."""
    pair = generate(GeneratorSpec("path", {"n": 2 * ell + 1}, POLICY, seed))
    return pair, range(1, 2 * ell), ell


def ssm_path(ell, seed=0):
    """Vertex 0 pinned next to v=1, disagreement at the far end, ell steps from v."""
    pair = generate(GeneratorSpec("path", {"n": ell + 2}, POLICY, seed))
    return pair, range(1, ell + 1), 1, {ell + 1}


def test_envelope_formulas():
    pair = star_pair(2, list(range(1, 16)), list(range(1, 16)))
    env = theoretical_envelope(pair, 2, 10)
    assert env.F == pytest.approx(4 * (math.log(15) - 2 * math.log(0.9)), rel=1e-12)
    assert env.gamma == pytest.approx(-math.log(1 - epsilon_of(2, 10)), rel=1e-12)
    r = 1 - env.epsilon
    x = env.F * r**env.d0
    assert math.exp(x) <= 1 + 2 * x
    if env.d0 > 0:
        y = env.F * r ** (env.d0 - 1)
        assert math.exp(y) > 1 + 2 * y
    assert env.B == pytest.approx(max(math.exp(env.F + env.gamma * env.d0), 2 * env.F))
    assert env(3) == pytest.approx(env.B * math.exp(-3 * env.gamma))


def test_envelope_requires_assumption():
    with pytest.raises(DomainError):
        theoretical_envelope(path_pair(3, [1, 2, 3]), 2, 10)


def test_fit_exact_exponential():
    fit = fit_decay([DecaySample(d, math.exp(-d)) for d in range(1, 8)])
    assert fit.gamma == pytest.approx(1, abs=1e-9)
    assert fit.B == pytest.approx(1, abs=1e-9)
    assert fit.residual < 1e-9


def test_fit_constant():
    fit = fit_decay([DecaySample(d, 0.25) for d in range(1, 6)])
    assert fit.gamma == pytest.approx(0, abs=1e-12)


def test_fit_needs_two_distances():
    with pytest.raises(FitError):
        fit_decay([DecaySample(2, 0.1), DecaySample(2, 0.2)])
    with pytest.raises(FitError):
        fit_decay([DecaySample(1, 0.0), DecaySample(2, 0.0)])


def test_wsm_equal_conditions_give_zero():
    # a single vertex outside with a one-color list cannot disagree
    pair = path_pair(3, [[1, 2, 3], [1, 2, 3], [2]])
    run = wsm_experiment(pair, {0, 1}, 0, 5, seed=1, free_prob=0.0)
    assert all(s.epsilon == 0 for s in run)
    assert all(s.distance == 2 for s in run)


def test_wsm_decays_with_distance():
    near = wsm_experiment(*wsm_path(2), samples=10, seed=3, free_prob=0.0)
    far = wsm_experiment(*wsm_path(6), samples=10, seed=3, free_prob=0.0)
    assert max(s.epsilon for s in far) < max(s.epsilon for s in near)


def test_wsm_within_marginal_ratio_cap():
    pair, psi, v = wsm_path(3)
    run = wsm_experiment(pair, psi, v, samples=10, seed=5)
    beta, q, delta = 10, pair.q, pair.max_degree
    cap = (1 / beta) * q * (1 - 1 / beta) ** (-delta)
    assert all(s.epsilon <= cap for s in run)


def test_ssm_decays_with_pinned_neighbor():
    eps = []
    for ell in (2, 4, 6):
        pair, psi, v, w = ssm_path(ell)
        run = ssm_experiment(pair, psi, v, w, samples=8, seed=2, free_prob=0.0)
        assert run.strip_checked == 8
        assert all(s.distance == ell for s in run)
        eps.append(max(s.epsilon for s in run))
    assert eps[0] > eps[1] > eps[2]


def test_ssm_full_boundary_equals_wsm_protocol():
    pair, psi, v = wsm_path(2)
    run = ssm_experiment(pair, psi, v, {0, 4}, samples=4, seed=1, free_prob=0.0)
    assert all(s.distance == 2 for s in run)
    assert any(s.epsilon > 0 for s in run)


def test_ssm_bad_w():
    pair, psi, v, _ = ssm_path(3)
    with pytest.raises(ValueError):
        ssm_experiment(pair, psi, v, {2}, samples=1, seed=0)


def test_csv_format_and_determinism(tmp_path):
    pair, psi, v = wsm_path(2)
    env = theoretical_envelope(pair, 2, 10)
    a = format_csv(wsm_experiment(pair, psi, v, 5, seed=11).samples, env)
    b = format_csv(wsm_experiment(pair, psi, v, 5, seed=11).samples, env)
    assert a == b
    assert a.splitlines()[0] == ",".join(CSV_HEADER)
    assert len(a.splitlines()) == 6
    write_csv(wsm_experiment(pair, psi, v, 5, seed=11).samples, tmp_path / "x.csv", env)
    assert (tmp_path / "x.csv").read_bytes() == a.encode()
    assert format_csv(wsm_experiment(pair, psi, v, 5, seed=12).samples, env) != a


def test_envelope_violations_detects():
    pair, _, _ = wsm_path(2)
    env = theoretical_envelope(pair, 2, 10)
    bad = DecaySample(1, env(1) * 2)
    assert envelope_violations([bad, DecaySample(1, 0.0)], env) == [bad]


def test_samples_are_reproducible_per_index():
    pair, psi, v = wsm_path(2)
    long = wsm_experiment(pair, psi, v, 6, seed=4)
    short = wsm_experiment(pair, psi, v, 3, seed=4)
    assert long.samples[:3] == short.samples
    assert np.isfinite([s.epsilon for s in long]).all()
