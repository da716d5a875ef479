"""Tests of the scalar quantities and their certificates."""

import math

import numpy as np
import pytest

from numrad import (
    alpha_min_bound,
    crawford,
    crawford_hermitian,
    golden_section_min,
    numerical_radius,
    op_norm,
    power_psd,
    psd_product_routes,
    spectral_radius,
    spectral_radius_general,
    spectral_radius_psd_product,
    support_lambda_max,
)
from numrad.ensembles import EnsembleSpec, draw, worked_example

from _oracles import quad_form_samples, r_eig_oracle, w_grid_oracle


def _rng(seed=0):
    return np.random.default_rng(seed)


# --- golden section ----------------------------------------------------------


def test_golden_section_finds_parabola_minimum():
    x, fx, evals = golden_section_min(lambda t: (t - 2.0) ** 2, 1.0, 5.0, 1e-10)
    assert abs(x - 2.0) <= 1e-9
    assert fx <= 1e-18
    assert evals > 10


def test_golden_section_flat_function_prefers_left():
    x, fx, _ = golden_section_min(lambda t: 1.0, 0.0, 1.0, 1e-10)
    assert x <= 1e-9
    assert fx == 1.0


# --- support function ----------------------------------------------------------


def test_support_lambda_max_at_zero_angle():
    lam, x = support_lambda_max(np.array([[1, 4], [1, 1]]), 0.0)
    assert abs(lam - 3.5) <= 1e-12
    assert abs(np.linalg.norm(x) - 1.0) <= 1e-12


def test_support_lambda_max_hermitian_is_top_eigenvalue():
    H = np.array([[2, 1 - 1j], [1 + 1j, -1]])
    lam, _ = support_lambda_max(H, 0.0)
    assert abs(lam - np.linalg.eigvalsh(H)[-1]) <= 1e-12


def test_support_lambda_max_at_pi():
    lam, _ = support_lambda_max(np.array([[2, 1], [0, 2]]), math.pi)
    assert abs(lam - (-1.5)) <= 1e-12


# --- numerical radius ------------------------------------------------------------


def test_numerical_radius_worked_examples():
    assert abs(numerical_radius(worked_example("example3x3")).value - 1.5) <= 1e-9
    assert abs(numerical_radius(np.array([[0, 2], [0, 0]])).value - 1.0) <= 1e-9
    assert abs(numerical_radius(worked_example("example2x2")).value - 3.5) <= 1e-9


def test_numerical_radius_matches_grid_oracle():
    rng = _rng(1)
    for n in (2, 3, 5):
        A = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        got = numerical_radius(A).value
        assert abs(got - w_grid_oracle(A)) <= 1e-6 * (1 + got)


def test_numerical_radius_witness_certificate():
    rng = _rng(2)
    for n in (2, 4):
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        res = numerical_radius(A)
        assert abs(np.linalg.norm(res.witness) - 1.0) <= 1e-12
        quad = abs(res.witness.conj() @ A @ res.witness)
        assert abs(quad - res.value) <= 1e-8 * (1 + res.value)
        assert 0.0 <= res.theta_star < 2 * math.pi
        assert res.value >= 0.0
        # the sampled lower bound can never beat the reported maximum
        assert np.abs(quad_form_samples(A, rng, 500)).max() <= res.value + 1e-10


def test_numerical_radius_dominates_every_sample():
    rng = _rng(3)
    for fam in ("ginibre", "normal", "nilpotent_rank1"):
        A = draw(EnsembleSpec(fam, 4, seed=21), trial=3)
        w = numerical_radius(A).value
        assert np.abs(quad_form_samples(A, rng, 800)).max() <= w + 1e-10


# --- Crawford number --------------------------------------------------------------


def test_crawford_shifted_jordan_disk():
    # numerical range of [[2,1],[0,2]] is the disk of radius 1/2 about 2
    res = crawford(np.array([[2, 1], [0, 2]]))
    assert abs(res.value - 1.5) <= 1e-9
    rng = _rng(4)
    assert np.abs(quad_form_samples(np.array([[2, 1], [0, 2]]), rng, 4000)).min() >= res.value - 1e-9


def test_crawford_hermitian_interval_and_zero_cases():
    assert abs(crawford(np.diag([1.0, 3.0])).value - 1.0) <= 1e-9
    assert crawford(np.array([[0.0, 1.0], [1.0, 0.0]])).value <= 1e-9


def test_crawford_jordan_closed_form():
    # c(lam I + mu N) = max(0, |lam| - |mu| cos(pi/(n+1)))
    for n, lam, mu in ((2, 2 + 1j, 0.5), (3, -1.5, 1.0), (4, 0.3, 2.0)):
        A = draw(EnsembleSpec("jordan_shifted", n, seed=0, params={"lam": [lam.real if isinstance(lam, complex) else lam, lam.imag if isinstance(lam, complex) else 0.0], "mu": [mu, 0.0]}), trial=0)
        expected = max(0.0, abs(lam) - abs(mu) * math.cos(math.pi / (n + 1)))
        assert abs(crawford(A).value - expected) <= 1e-8


def test_crawford_below_every_sample_and_below_radius():
    rng = _rng(5)
    for trial in range(4):
        A = draw(EnsembleSpec("ginibre", 3, seed=31), trial=trial)
        c = crawford(A).value
        w = numerical_radius(A).value
        assert c <= w + 1e-10
        assert c <= np.abs(quad_form_samples(A, rng, 3000)).min() + 1e-8


def test_crawford_hermitian_examples():
    assert crawford_hermitian(np.diag([1.0, 3.0])) == 1.0
    assert crawford_hermitian(np.diag([-1.0, 1.0])) == 0.0
    assert crawford_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]])) == 0.0
    with pytest.raises(ValueError, match="Hermitian"):
        crawford_hermitian(np.array([[0, 1], [0, 0]]))


def test_crawford_agrees_with_hermitian_route():
    for trial in range(5):
        H = draw(EnsembleSpec("hermitian_gauss", 3, seed=41), trial=trial)
        assert abs(crawford(H).value - crawford_hermitian(H)) <= 1e-8


# --- spectral radius ----------------------------------------------------------------


def test_psd_product_known_values():
    assert abs(spectral_radius_psd_product([[1, 1], [1, 4]], [[4, 1], [1, 1]]) - 9.0) <= 1e-9
    assert abs(spectral_radius_psd_product(np.diag([0, 3, 1]), np.diag([3, 0, 1])) - 1.0) <= 1e-12
    assert abs(spectral_radius_psd_product(np.eye(2), np.eye(2)) - 1.0) <= 1e-12


def test_psd_product_two_routes_agree():
    rng = _rng(6)
    for n in (2, 3, 5):
        G1 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        G2 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        r1, r2 = psd_product_routes(G1 @ G1.conj().T, G2 @ G2.conj().T)
        assert abs(r1 - r2) <= 1e-8 * (1 + r1)


def test_psd_product_rejects_indefinite():
    with pytest.raises(ValueError, match="not PSD"):
        spectral_radius_psd_product(np.diag([1.0, -1.0]), np.eye(2))


def test_spectral_radius_general_examples():
    assert spectral_radius_general(np.array([[0, 1], [0, 0]])) == 0.0
    assert abs(spectral_radius_general(np.diag([-2.0, 1.0])) - 2.0) <= 1e-9
    assert abs(spectral_radius_general(np.array([[1, 4], [1, 1]])) - 3.0) <= 1e-8
    assert spectral_radius_general(np.zeros((3, 3))) == 0.0


def test_spectral_radius_matches_eig_oracle():
    rng = _rng(7)
    for n in (2, 3, 6):
        A = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        assert abs(spectral_radius_general(A) - r_eig_oracle(A)) <= 1e-6 * (1 + r_eig_oracle(A))


def test_spectral_radius_below_radius_and_normal_equalities():
    for trial in range(6):
        A = draw(EnsembleSpec("ginibre", 4, seed=51), trial=trial)
        assert spectral_radius(A) <= numerical_radius(A).value + 1e-8
        N = draw(EnsembleSpec("normal", 4, seed=52), trial=trial)
        w = numerical_radius(N).value
        assert abs(spectral_radius(N) - w) <= 1e-6
        assert abs(w - op_norm(N)) <= 1e-6


# --- weighted gram bound ---------------------------------------------------------------


def test_alpha_min_bound_balanced_nilpotent():
    res = alpha_min_bound(np.array([[0, 2], [0, 0]]))
    assert abs(res.value - 2.0) <= 1e-9
    assert abs(res.alpha_star - 0.5) <= 1e-6


def test_alpha_min_bound_hermitian_is_norm_squared():
    H = np.array([[1, 2], [2, -3]], dtype=float)
    res = alpha_min_bound(H)
    assert abs(res.value - op_norm(H) ** 2) <= 1e-9
    # objective is flat up to rounding noise; the report must be deterministic
    again = alpha_min_bound(H)
    assert again.alpha_star == res.alpha_star and again.value == res.value


def test_alpha_min_bound_midpoint_consistency():
    A = np.array([[1, 4], [1, 1]], dtype=float)
    res = alpha_min_bound(A)
    half = 0.5 * op_norm(A.conj().T @ A + A @ A.conj().T)
    assert res.value <= half + 1e-9


# --- pointwise inequalities over random vectors ---------------------------------------


def test_mixed_schwarz_pointwise():
    from numrad import abs_parts

    rng = _rng(8)
    for trial in range(3):
        A = draw(EnsembleSpec("ginibre", 4, seed=61), trial=trial)
        absA, absAstar = abs_parts(A)
        for _ in range(100):
            x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            x /= np.linalg.norm(x)
            lhs = abs(x.conj() @ A @ x)
            rhs = math.sqrt((x.conj() @ absA @ x).real) * math.sqrt((x.conj() @ absAstar @ x).real)
            assert lhs <= rhs + 1e-10


def test_generalized_schwarz_pointwise():
    from numrad import abs_parts

    rng = _rng(9)
    for trial in range(3):
        A, B = draw(EnsembleSpec("intertwined_pair", 3, seed=71), trial=trial)
        absA, absAstar = abs_parts(A)
        rB = spectral_radius(B)
        for s in (0.25, 0.5, 0.75):
            F = power_psd(absA, s)
            G = power_psd(absAstar, 1.0 - s)
            for _ in range(100):
                x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
                y = rng.standard_normal(3) + 1j * rng.standard_normal(3)
                lhs = abs(y.conj() @ (A @ B @ x))
                rhs = rB * np.linalg.norm(F @ x) * np.linalg.norm(G @ y)
                assert lhs <= rhs + 1e-8 * (1 + rhs)


# --- invariances ------------------------------------------------------------------------


def test_sandwich_inequality_across_ensembles():
    for fam in ("ginibre", "normal", "unitary", "nilpotent_rank1", "jordan_shifted"):
        for trial in range(3):
            A = draw(EnsembleSpec(fam, 3, seed=81), trial=trial)
            w = numerical_radius(A).value
            n = op_norm(A)
            assert 0.5 * n <= w + 1e-8
            assert w <= n + 1e-8


def test_numerical_radius_homogeneity():
    rng = _rng(10)
    A = draw(EnsembleSpec("ginibre", 3, seed=91), trial=0)
    w = numerical_radius(A).value
    for _ in range(3):
        lam = complex(rng.standard_normal(), rng.standard_normal())
        got = numerical_radius(lam * A).value
        assert abs(got - abs(lam) * w) <= 1e-8 * (1 + abs(lam) * op_norm(A))


def test_unitary_similarity_invariance():
    A = draw(EnsembleSpec("ginibre", 4, seed=101), trial=0)
    U = draw(EnsembleSpec("unitary", 4, seed=102), trial=0)
    B = U @ A @ U.conj().T
    assert abs(numerical_radius(A).value - numerical_radius(B).value) <= 1e-8
    assert abs(crawford(A).value - crawford(B).value) <= 1e-8
    assert abs(spectral_radius(A) - spectral_radius(B)) <= 1e-8
