import numpy as np
import pytest

from conftest import chain, complete_unit, random_weights

from wflsa import (
    DimensionMismatchError,
    SolverConfig,
    alpha_update,
    beta_update,
    clamp_T,
    edge_list_from,
    initial_state,
    lambda1_knots,
    rethreshold,
    soft_threshold,
    solve,
    weight_matrix_validate,
)
from wflsa.oracle import oracle_objective, oracle_solve
from wflsa.solver import advance, choose_q


# ------------------------------------------------------------ soft threshold

def test_soft_threshold_identity_at_zero():
    assert soft_threshold(0.0, 3.7) == 3.7


def test_soft_threshold_dead_zone():
    assert soft_threshold(1.0, 0.5) == 0.0


def test_soft_threshold_negative_branch():
    assert soft_threshold(1.0, -2.5) == -1.5


def test_soft_threshold_no_negative_zero():
    out = soft_threshold(2.0, np.array([-1.0, 1.0, -3.0]))
    assert np.array_equal(out, [0.0, 0.0, -1.0])
    assert np.signbit(out[0]) == False  # noqa: E712  (explicitly checking -0.0)


# ------------------------------------------------------------------- clamp_T

def test_clamp_passthrough():
    assert np.array_equal(clamp_T(np.array([0.3, -0.9])), [0.3, -0.9])


def test_clamp_cuts_both_sides():
    assert np.array_equal(clamp_T(np.array([2.0, -5.0, 1.0])), [1.0, -1.0, 1.0])


def test_clamp_empty():
    assert clamp_T(np.array([])).shape == (0,)


# -------------------------------------------------------------- update steps

def test_beta_update_without_smoothness_term():
    e = edge_list_from(complete_unit(3))
    st = initial_state(3, e.m)
    y = np.array([3.0, -6.0, 9.0])
    out = beta_update(st, y, e, lambda2=0.0, rho=1.0, q=2.0)
    assert np.allclose(out, y / 3.0)


def test_beta_update_zero_state_halves_y():
    e = edge_list_from(complete_unit(4))
    st = initial_state(4, e.m)
    y = np.array([1.0, 2.0, 3.0, 4.0])
    out = beta_update(st, y, e, lambda2=1.0, rho=1.0, q=1.0)
    assert np.allclose(out, y / 2.0)


def test_beta_update_worked_example_p4():
    # complete unit graph, alpha = (1,0,0,0,0,0) on edge (1,2), previous
    # alpha zero: the extrapolated dual is (2,0,...,0), whose Dt is
    # (2,-2,0,0), giving (y - Dt)/2 = (-0.5, 2, 1.5, 2)
    e = edge_list_from(complete_unit(4))
    st = initial_state(4, e.m)
    st.alpha_curr = np.array([1.0, 0, 0, 0, 0, 0])
    y = np.array([1.0, 2.0, 3.0, 4.0])
    out = beta_update(st, y, e, lambda2=1.0, rho=1.0, q=1.0)
    assert np.allclose(out, [-0.5, 2.0, 1.5, 2.0])


def test_beta_update_dimension_mismatch():
    e = edge_list_from(complete_unit(3))
    st = initial_state(3, e.m)
    with pytest.raises(DimensionMismatchError):
        beta_update(st, np.zeros(5), e, 1.0, 1.0, 1.0)


def test_alpha_update_constant_beta_keeps_alpha():
    e = edge_list_from(complete_unit(4))
    st = initial_state(4, e.m)
    st.alpha_curr = np.linspace(-0.9, 0.9, e.m)
    out = alpha_update(st, np.full(4, 7.7), e, lambda2=3.0, rho=2.0)
    assert np.allclose(out, st.alpha_curr)


def test_alpha_update_lambda2_zero_keeps_alpha():
    e = edge_list_from(complete_unit(3))
    st = initial_state(3, e.m)
    st.alpha_curr = np.array([0.5, -0.5, 0.25])
    out = alpha_update(st, np.array([1.0, 2.0, 3.0]), e, lambda2=0.0, rho=1.0)
    assert np.array_equal(out, st.alpha_curr)


def test_alpha_update_clamps_single_edge():
    w = weight_matrix_validate([[0.0, 1.0], [1.0, 0.0]])
    e = edge_list_from(w)
    st = initial_state(2, 1)
    out = alpha_update(st, np.array([1.0, 0.0]), e, lambda2=10.0, rho=1.0)
    assert np.array_equal(out, [1.0])


def test_alpha_stays_in_range_across_iterations():
    rng = np.random.default_rng(21)
    w = random_weights(rng, 6)
    e = edge_list_from(w)
    y = rng.normal(0.0, 3.0, 6)
    cfg = SolverConfig(lambda2=1.0)
    q = choose_q(w, cfg)
    st = initial_state(6, e.m)
    for _ in range(50):
        b = beta_update(st, y, e, 1.0, 1.0, q)
        a = alpha_update(st, b, e, 1.0, 1.0)
        assert np.all(a >= -1.0) and np.all(a <= 1.0)
        advance(st, b, a)


# --------------------------------------------------------------------- solve

def test_solve_no_penalty_returns_y():
    rng = np.random.default_rng(22)
    y = rng.normal(0.0, 1.0, 7)
    w = random_weights(rng, 7)
    sol = solve(y, w, SolverConfig(eps=1e-12))
    assert np.allclose(sol.beta, y, atol=1e-10)


def test_solve_lambda2_zero_is_exact_thresholding():
    w = weight_matrix_validate(np.zeros((3, 3)))
    sol = solve(np.array([1.0, -1.0, 3.0]), w, SolverConfig(lambda1=2.0))
    assert np.array_equal(sol.beta, [0.0, 0.0, 1.0])
    assert sol.iterations == 0
    assert sol.converged


def test_solve_fusion_to_mean_p3():
    sol = solve(
        np.array([1.0, 2.0, 3.0]),
        complete_unit(3),
        SolverConfig(lambda2=10.0, rho=0.01, eps=1e-12, max_iter=200000),
    )
    assert np.allclose(sol.beta, [2.0, 2.0, 2.0], atol=1e-4)
    ref = oracle_solve(np.array([1.0, 2.0, 3.0]), complete_unit(3), 0.0, 10.0)
    assert np.allclose(ref, 2.0, atol=1e-4)


def test_solve_matches_oracle_objective():
    rng = np.random.default_rng(23)
    y = rng.normal(0.0, 2.0, 5)
    w = random_weights(rng, 5)
    cfg = SolverConfig(lambda2=0.5, eps=1e-13, max_iter=500000)
    sol = solve(y, w, cfg)
    ref = oracle_solve(y, w, 0.0, 0.5)
    assert sol.objective <= oracle_objective(y, ref, w, 0.0, 0.5) + 1e-6


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        solve(np.zeros(3), complete_unit(4), SolverConfig())


def test_solution_invariants():
    rng = np.random.default_rng(24)
    y = rng.normal(0.0, 1.0, 6)
    w = random_weights(rng, 6)
    cfg = SolverConfig(lambda1=0.3, lambda2=0.7, eps=1e-9)
    sol = solve(y, w, cfg)
    assert sol.converged and sol.final_delta < cfg.eps
    assert sol.iterations <= cfg.max_iter
    assert np.array_equal(sol.beta, soft_threshold(0.3, sol.beta_unthresholded))


def test_solve_hits_max_iter_without_error():
    rng = np.random.default_rng(25)
    y = rng.normal(0.0, 5.0, 8)
    sol = solve(y, complete_unit(8), SolverConfig(lambda2=2.0, eps=1e-15, max_iter=10))
    assert not sol.converged
    assert sol.iterations == 10
    assert sol.final_delta >= 1e-15


def test_solve_determinism_bitwise():
    rng = np.random.default_rng(26)
    y = rng.normal(0.0, 1.0, 6)
    w = random_weights(rng, 6)
    cfg = SolverConfig(lambda1=0.1, lambda2=0.8)
    a = solve(y, w, cfg)
    b = solve(y, w, cfg)
    assert np.array_equal(a.beta, b.beta)
    assert a.iterations == b.iterations
    assert a.objective == b.objective


def test_q_override_is_respected():
    rng = np.random.default_rng(27)
    y = rng.normal(0.0, 1.0, 4)
    w = complete_unit(4)
    sol = solve(y, w, SolverConfig(lambda2=1.0, q_override=50.0))
    assert sol.q_used == 50.0


def test_graph_permutation_equivariance():
    rng = np.random.default_rng(28)
    p = 7
    y = rng.normal(0.0, 1.0, p)
    w = random_weights(rng, p)
    perm = rng.permutation(p)
    wp = weight_matrix_validate(w.w[np.ix_(perm, perm)])
    cfg = SolverConfig(lambda1=0.2, lambda2=0.6, eps=1e-12)
    direct = solve(y[perm], wp, cfg)
    permuted = solve(y, w, cfg).beta[perm]
    assert np.allclose(direct.beta, permuted, atol=1e-8)


def test_fusion_limit_large_lambda2():
    rng = np.random.default_rng(29)
    y = rng.normal(0.0, 2.0, 6)
    w = chain(6)
    lam2 = 1e3 * np.abs(y).max()
    cfg0 = SolverConfig(lambda2=lam2)
    q = choose_q(w, cfg0)
    sol = solve(y, w, SolverConfig(lambda2=lam2, rho=1.0 / q, eps=1e-10, max_iter=200000))
    assert np.abs(sol.beta - y.mean()).max() < 1e-3


def test_sparsity_shutoff_exact_zero():
    rng = np.random.default_rng(30)
    y = rng.normal(0.0, 2.0, 5)
    w = random_weights(rng, 5)
    sol = solve(y, w, SolverConfig(lambda2=0.4, eps=1e-10))
    lam1 = np.abs(sol.beta_unthresholded).max() * (1.0 + 1e-12) + 1e-9
    shut = rethreshold(sol, lam1)
    assert np.all(shut.beta == 0.0)


def test_block_diagonal_decoupling():
    rng = np.random.default_rng(31)
    wa = random_weights(rng, 4, sparsify=0.2)
    wb = random_weights(rng, 3, sparsify=0.2)
    raw = np.zeros((7, 7))
    raw[:4, :4] = wa.w
    raw[4:, 4:] = wb.w
    w = weight_matrix_validate(raw)
    y = rng.normal(0.0, 1.0, 7)
    cfg = SolverConfig(lambda2=0.9, eps=1e-13)
    whole = solve(y, w, cfg).beta
    parta = solve(y[:4], wa, cfg).beta
    partb = solve(y[4:], wb, cfg).beta
    assert np.allclose(whole, np.concatenate([parta, partb]), atol=1e-8)


def test_stationarity_at_convergence():
    rng = np.random.default_rng(32)
    y = rng.normal(0.0, 1.0, 6)
    w = random_weights(rng, 6)
    sol = solve(y, w, SolverConfig(lambda2=0.8, eps=1e-13, max_iter=500000))
    base = oracle_objective(y, sol.beta_unthresholded, w, 0.0, 0.8)
    for _ in range(100):
        v = rng.normal(0.0, 1.0, 6)
        v /= np.linalg.norm(v)
        perturbed = oracle_objective(y, sol.beta_unthresholded + 1e-3 * v, w, 0.0, 0.8)
        assert base <= perturbed + 1e-6


# ----------------------------------------------------------- knots and repath

def test_knots_are_absolute_values():
    w = weight_matrix_validate(np.zeros((3, 3)))
    sol = solve(np.array([0.0, -3.0, 1.5]), w, SolverConfig())
    assert np.array_equal(lambda1_knots(sol), [0.0, 3.0, 1.5])


def test_knots_fusion_example():
    sol = solve(
        np.array([1.0, 2.0, 3.0]),
        complete_unit(3),
        SolverConfig(lambda2=10.0, rho=0.01, eps=1e-12, max_iter=200000),
    )
    assert np.allclose(lambda1_knots(sol), [2.0, 2.0, 2.0], atol=1e-4)


def test_rethreshold_zero_recovers_unthresholded():
    rng = np.random.default_rng(33)
    y = rng.normal(0.0, 1.0, 5)
    sol = solve(y, random_weights(rng, 5), SolverConfig(lambda1=0.5, lambda2=0.3))
    back = rethreshold(sol, 0.0)
    assert np.array_equal(back.beta, back.beta_unthresholded)


def test_rethreshold_matches_direct_oracle():
    rng = np.random.default_rng(34)
    y = rng.normal(0.0, 1.5, 5)
    w = random_weights(rng, 5)
    sol = solve(y, w, SolverConfig(lambda2=0.5, eps=1e-13, max_iter=500000))
    rt = rethreshold(sol, 0.3)
    ref = oracle_solve(y, w, 0.3, 0.5)
    assert abs(rt.objective - oracle_objective(y, ref, w, 0.3, 0.5)) < 1e-4


def test_rethreshold_rejects_negative():
    w = weight_matrix_validate(np.zeros((2, 2)))
    sol = solve(np.array([1.0, 2.0]), w, SolverConfig())
    with pytest.raises(ValueError):
        rethreshold(sol, -0.1)


# --------------------------------------------------------------------- config

def test_config_rejects_bad_values():
    for kwargs in (
        dict(lambda1=-1.0),
        dict(lambda2=-0.1),
        dict(rho=0.0),
        dict(eps=0.0),
        dict(max_iter=0),
        dict(q_override=-2.0),
    ):
        with pytest.raises(ValueError):
            SolverConfig(**kwargs)


def test_choose_q_floor_and_margin():
    w = weight_matrix_validate(np.zeros((3, 3)))
    assert choose_q(w, SolverConfig(lambda2=0.0)) == 1e-8
    wc = complete_unit(3)
    assert choose_q(wc, SolverConfig(lambda2=1.0)) == pytest.approx(4.0 * (1 + 1e-6))
