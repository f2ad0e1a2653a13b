import itertools

import numpy as np
from pytest import raises

from fqilab.kernels import LaplacianKernel
from fqilab.mdp import (
    FiniteMdp,
    ProductPlan,
    TablePlan,
    concentration_coeffs,
    make_barron_mdp,
    make_plan,
    make_rkhs_mdp,
    pushforward_plan,
    reference_plan,
    uniform_plan,
)
from fqilab.utils import stream_rng

from ..testutils import one_state_mdp, random_finite_mdp


def test_table_plan_sampling():
    tables = np.array([[[0.1, 0.2], [0.3, 0.4]]])
    plan = TablePlan(tables)
    states, actions = plan.sample(1, 50000, stream_rng(0))
    index = states.argmax(axis=1) * 2 + actions
    freq = np.bincount(index, minlength=4) / 50000
    assert np.abs(freq - tables.ravel()).max() < 0.01
    assert np.allclose(plan.state_marginal(1), [0.3, 0.7])
    with raises(ValueError):
        plan.sample(2, 10, stream_rng(0))
    with raises(ValueError):
        TablePlan(tables * 2)
    with raises(ValueError):
        TablePlan(-tables)


def test_uniform_plans():
    mdp = random_finite_mdp(0, 3, 2, 2)
    plan = uniform_plan(mdp)
    assert isinstance(plan, TablePlan)
    assert np.allclose(plan.tables, 1 / 6)
    sphere = make_barron_mdp(0, 4, 2, 2, 3)
    plan = make_plan(sphere, "uniform")
    assert isinstance(plan, ProductPlan) and plan.name == "uniform"
    states, actions = plan.sample(2, 100, stream_rng(1))
    assert np.allclose(np.linalg.norm(states, axis=1), 1.0)
    assert set(np.unique(actions)) <= {0, 1}


def test_reference_plan():
    mdp = make_rkhs_mdp(0, 3, 3, 2, 3, LaplacianKernel(dim=3))
    plan = make_plan(mdp)
    assert plan.name == "reference"
    states = plan.initial_states(stream_rng(2), 10)
    assert states.shape == (10, 3)
    states, _ = plan.sample(3, 10, stream_rng(2))
    assert np.allclose(np.linalg.norm(states, axis=1), 1.0)
    with raises(ValueError):
        reference_plan(random_finite_mdp(0, 3, 2, 2))


def test_pushforward_plan():
    mdp = random_finite_mdp(1, 3, 2, 3)
    plan = pushforward_plan(mdp)
    assert np.allclose(plan.tables[0], 1 / 6)
    marginal = np.full(3, 1 / 3) @ mdp.transitions[0].mean(axis=1)
    assert np.allclose(plan.state_marginal(2), marginal)
    sphere = make_barron_mdp(0, 4, 2, 2, 3)
    states, _ = pushforward_plan(sphere).sample(2, 20, stream_rng(0))
    assert np.allclose(np.linalg.norm(states, axis=1), 1.0)


def test_make_plan_unknown():
    with raises(ValueError):
        make_plan(random_finite_mdp(0, 3, 2, 2), "optimal")


def _brute_force_kappas(mdp, nu, policy_first_action):
    H, S, A = nu.shape
    P = mdp.transitions
    kappas = np.ones(H)
    for flat in itertools.product(range(A), repeat=H * S):
        pi = np.reshape(flat, (H, S))
        if policy_first_action:
            d = nu[0].sum(axis=1)
            q = np.zeros((S, A))
            q[np.arange(S), pi[0]] = d
        else:
            q = nu[0]
        for h in range(1, H + 1):
            if h > 1:
                d = np.einsum("sa,sat->t", q, P[h - 2])
                q = np.zeros((S, A))
                q[np.arange(S), pi[h - 1]] = d
            if h > 1 or policy_first_action:
                value = np.sqrt(np.sum(q**2 / nu[h - 1]))
                kappas[h - 1] = max(kappas[h - 1], value)
    return kappas


def test_concentration_matches_brute_force():
    mdp = random_finite_mdp(2, 3, 2, 3)
    rng = np.random.default_rng(0)
    nu = rng.random((3, 3, 2)) + 0.1
    nu /= nu.sum(axis=(1, 2), keepdims=True)
    plan = TablePlan(nu)
    for first in (False, True):
        res = concentration_coeffs(mdp, plan, policy_first_action=first)
        expected = _brute_force_kappas(mdp, nu, first)
        assert res.exact
        assert np.allclose(res.kappas, expected, rtol=1e-12)
        assert abs(res.kappa - np.sum(np.arange(1, 4) * expected) / 9) < 1e-12
    assert concentration_coeffs(mdp, plan).kappas[0] == 1.0


def test_concentration_one_state():
    mdp = one_state_mdp()
    res = concentration_coeffs(mdp, uniform_plan(mdp))
    assert np.allclose(res.kappas, [1.0, np.sqrt(2)])
    res = concentration_coeffs(mdp, uniform_plan(mdp), policy_first_action=True)
    assert np.allclose(res.kappas, [np.sqrt(2), np.sqrt(2)])


def test_concentration_upper_bound():
    mdp = random_finite_mdp(3, 3, 2, 4)
    plan = uniform_plan(mdp)
    exact = concentration_coeffs(mdp, plan)
    bound = concentration_coeffs(mdp, plan, max_policies=4)
    assert not bound.exact
    assert bound.exact_steps[1]
    assert np.all(bound.kappas >= exact.kappas - 1e-12)


def test_concentration_upper_bound_on_skewed_plan():
    mdp = random_finite_mdp(8, 3, 2, 3)
    rng = np.random.default_rng(3)
    nu = rng.random((3, 3, 2)) ** 2 + 0.02
    nu /= nu.sum(axis=(1, 2), keepdims=True)
    plan = TablePlan(nu)
    exact = concentration_coeffs(mdp, plan, policy_first_action=True)
    bound = concentration_coeffs(mdp, plan, policy_first_action=True, max_policies=1)
    assert exact.exact and not bound.exact
    assert not bound.exact_steps[1:].any()
    assert bound.kappas[0] == exact.kappas[0]
    assert np.all(bound.kappas >= exact.kappas - 1e-12)
    assert bound.kappa >= exact.kappa - 1e-12


def test_concentration_is_relabel_invariant():
    mdp = random_finite_mdp(5, 3, 2, 3)
    rng = np.random.default_rng(4)
    nu = rng.random((3, 3, 2)) + 0.1
    nu /= nu.sum(axis=(1, 2), keepdims=True)
    sp, ap = np.array([2, 0, 1]), np.array([1, 0])
    moved = np.empty_like(nu)
    moved[:, sp[:, None], ap[None, :]] = nu
    relabeled = mdp.relabel(sp, ap)
    for first in (False, True):
        for budget in (2**16, 1):
            options = {"policy_first_action": first, "max_policies": budget}
            a = concentration_coeffs(mdp, TablePlan(nu), **options)
            b = concentration_coeffs(relabeled, TablePlan(moved), **options)
            assert np.allclose(a.kappas, b.kappas, rtol=1e-12)


def test_concentration_of_uniform_plan_on_mixing_mdp():
    S, A, H = 4, 3, 3
    rng = np.random.default_rng(6)
    noise = rng.random((H, S, A, S))
    noise /= noise.sum(axis=3, keepdims=True)
    mdp = FiniteMdp(rng.random((H, S, A)), 0.7 / S + 0.3 * noise)
    # Every reachable state density is at most C times the uniform plan marginal
    C = S * mdp.transitions.max()
    assert 1 <= C < 2
    res = concentration_coeffs(mdp, uniform_plan(mdp), policy_first_action=True)
    assert res.exact
    assert np.all(res.kappas <= np.sqrt(C * A) + 1e-12)
    assert np.all(res.kappas <= C * A)


def test_concentration_missing_support():
    mdp = random_finite_mdp(4, 3, 2, 2)
    nu = np.full((2, 3, 2), 1 / 6)
    nu[1] = 0.0
    nu[1, 0, :] = 0.5
    res = concentration_coeffs(mdp, TablePlan(nu))
    assert np.isinf(res.kappas[1])


def test_concentration_checks():
    mdp = random_finite_mdp(0, 3, 2, 2)
    sphere = make_barron_mdp(0, 4, 2, 2, 3)
    with raises(TypeError):
        concentration_coeffs(sphere, uniform_plan(sphere))
    with raises(ValueError):
        concentration_coeffs(mdp, TablePlan(np.full((2, 2, 2), 0.25)))
