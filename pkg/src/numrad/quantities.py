"""Scalar quantities of a square complex matrix.

The numerical radius and the Crawford number are both computed through the
rotated Hermitian part

    H(theta) = (e^{i theta} A + e^{-i theta} A*) / 2,

whose top eigenvalue h(theta) is the support function of the numerical range
in direction theta. Its maximum over theta is the numerical radius; and
because the numerical range is convex and compact, max(0, -min_theta h) is
the distance from the origin to it, i.e. the Crawford number. Both searches
run a dense angle grid followed by golden-section refinement of the interval
bracketing the grid extremum.

The spectral radius comes from repeated squaring with per-step
normalization (the norms ||A^(2^m)||^(1/m...) are non-increasing in m), with
exact eigenvalue routes for Hermitian inputs and PSD products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import as_matrix, frobenius, herm_eig, op_norm, sqrt_psd
from .tolerances import (
    ALPHA_SEARCH_TOL,
    ANGLE_REFINE_TOL,
    GELFAND_MAX_STEPS,
    GELFAND_REL_TOL,
    GRID_ANGLES,
    HERM_RESID_TOL,
)

__all__ = [
    "QuantityResult",
    "golden_section_min",
    "support_lambda_max",
    "numerical_radius",
    "crawford",
    "crawford_hermitian",
    "spectral_radius_psd_product",
    "psd_product_routes",
    "spectral_radius_general",
    "spectral_radius",
    "alpha_min_bound",
]

_TWO_PI = 2.0 * math.pi
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class QuantityResult:
    """A computed scalar quantity together with its certificate.

    ``theta_star`` is the optimal support direction and ``witness`` the top
    eigenvector of H(theta_star) (a unit vector x with |<Ax, x>| ~ value for
    the numerical radius). ``alpha_star`` is set by the weight search only.
    ``iterations`` counts eigenvalue evaluations spent in the search.
    """

    value: float
    kind: str
    theta_star: float | None = None
    witness: np.ndarray | None = None
    alpha_star: float | None = None
    iterations: int = 0


def golden_section_min(f, a: float, b: float, tol: float):
    """Golden-section minimum of a unimodal f on [a, b] to bracket width tol.

    Ties move the right endpoint, so plateaus resolve toward the smallest
    minimizer. Returns (x, f(x), evaluations).
    """
    a = float(a)
    b = float(b)
    if b < a:
        raise ValueError(f"empty interval [{a}, {b}]")
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = f(c)
    fd = f(d)
    evals = 2
    while (b - a) > tol and (d - c) > 0.0:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        evals += 1
    x = 0.5 * (a + b)
    return x, f(x), evals + 1


def _rotated_hermitian(A: np.ndarray, theta: float) -> np.ndarray:
    M = np.exp(1j * float(theta)) * A
    return 0.5 * (M + M.conj().T)


def support_lambda_max(A, theta: float):
    """Top eigenpair of H(theta) = (e^{i theta} A + e^{-i theta} A*)/2."""
    A = as_matrix(A)
    lam, V = np.linalg.eigh(_rotated_hermitian(A, theta))
    return float(lam[-1]), V[:, -1].copy()


def _support_value(A: np.ndarray, theta: float) -> float:
    return float(np.linalg.eigvalsh(_rotated_hermitian(A, theta))[-1])


def _support_grid(A: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    ph = np.exp(1j * thetas)
    M = ph[:, None, None] * A
    H = 0.5 * (M + np.conj(np.swapaxes(M, -1, -2)))
    return np.linalg.eigvalsh(H)[..., -1]


def _support_extremum(A, maximize: bool, grid: int, refine_tol: float):
    """Grid sweep of h(theta) plus golden-section refinement of the bracket.

    Grid ties resolve to the smallest theta; returns (theta, h(theta),
    eigenvector, evaluations).
    """
    A = as_matrix(A)
    m = int(grid)
    if m < 4:
        raise ValueError(f"grid must have at least 4 angles, got {m}")
    thetas = np.linspace(0.0, _TWO_PI, m, endpoint=False)
    vals = _support_grid(A, thetas)
    k = int(np.argmax(vals)) if maximize else int(np.argmin(vals))
    h = _TWO_PI / m
    sgn = -1.0 if maximize else 1.0
    x, fx, evals = golden_section_min(
        lambda t: sgn * _support_value(A, t), thetas[k] - h, thetas[k] + h, refine_tol
    )
    refined = sgn * fx
    grid_val = float(vals[k])
    if (maximize and grid_val > refined) or (not maximize and grid_val < refined):
        theta = float(thetas[k])
    else:
        theta = float(x) % _TWO_PI
    lam, vec = support_lambda_max(A, theta)
    return theta, lam, vec, m + evals + 1


def numerical_radius(A, *, grid: int | None = None, refine_tol: float | None = None) -> QuantityResult:
    """Numerical radius w(A) = max over unit x of |<Ax, x>|.

    Realized as max_theta lambda_max(H(theta)) over a dense angle grid with
    golden-section refinement around the grid argmax.
    """
    theta, lam, vec, evals = _support_extremum(
        A,
        maximize=True,
        grid=GRID_ANGLES if grid is None else grid,
        refine_tol=ANGLE_REFINE_TOL if refine_tol is None else refine_tol,
    )
    return QuantityResult(
        value=max(lam, 0.0),
        kind="numerical_radius",
        theta_star=theta,
        witness=vec,
        iterations=evals,
    )


def crawford(A, *, grid: int | None = None, refine_tol: float | None = None) -> QuantityResult:
    """Crawford number c(A) = min over unit x of |<Ax, x>|.

    Convexity of the numerical range turns the minimization over the unit
    sphere into a support-function problem: c(A) = max(0, -min_theta
    lambda_max(H(theta))), the distance from the origin to the range.
    """
    theta, lam, vec, evals = _support_extremum(
        A,
        maximize=False,
        grid=GRID_ANGLES if grid is None else grid,
        refine_tol=ANGLE_REFINE_TOL if refine_tol is None else refine_tol,
    )
    return QuantityResult(
        value=max(0.0, -lam),
        kind="crawford",
        theta_star=theta,
        witness=vec,
        iterations=evals,
    )


def crawford_hermitian(H) -> float:
    """Closed-form Crawford number of a Hermitian matrix.

    Zero when the spectrum straddles the origin, else the smaller eigenvalue
    magnitude.
    """
    eig = herm_eig(H)
    lo = float(eig.eigenvalues[0])
    hi = float(eig.eigenvalues[-1])
    if lo <= 0.0 <= hi:
        return 0.0
    return min(abs(lo), abs(hi))


def psd_product_routes(P, Q) -> tuple[float, float]:
    """Both routes to the spectral radius of a PSD product P Q.

    Route 1: lambda_max(P^(1/2) Q P^(1/2)), a Hermitian similarity of PQ.
    Route 2: ||P^(1/2) Q^(1/2)||^2. The two agree mathematically; their
    numerical discrepancy is a diagnostic of decomposition quality.
    """
    S = sqrt_psd(P)
    M = S @ as_matrix(Q, "Q") @ S
    lam = float(herm_eig(M).eigenvalues[-1])
    route1 = max(lam, 0.0)
    route2 = op_norm(S @ sqrt_psd(Q)) ** 2
    return route1, route2


def spectral_radius_psd_product(P, Q) -> float:
    """Spectral radius r(PQ) for Hermitian PSD P and Q."""
    route1, route2 = psd_product_routes(P, Q)
    assert abs(route1 - route2) <= 1e-6 * (1.0 + route1), (
        f"PSD product routes disagree: {route1!r} vs {route2!r}"
    )
    return route1


def spectral_radius_general(A, *, rel_tol: float | None = None, max_steps: int | None = None) -> float:
    """Spectral radius by repeated squaring with per-step normalization.

    Tracks b_m = ||A^(2^m)||^(1/2^m), which is non-increasing and converges
    to r(A); stops on a relative change below ``rel_tol`` or after
    ``max_steps`` squarings. Returns 0 for (numerically) nilpotent input.
    """
    A = as_matrix(A)
    rel_tol = GELFAND_REL_TOL if rel_tol is None else rel_tol
    max_steps = GELFAND_MAX_STEPS if max_steps is None else max_steps
    M = A
    t = 0.0
    prev = None
    b = 0.0
    for m in range(max_steps + 1):
        s = op_norm(M)
        if s == 0.0:
            return 0.0
        t += math.log(s) / (2.0**m)
        b = math.exp(t)
        if prev is not None:
            assert b <= prev * (1.0 + 1e-12) + 1e-300, "squaring sequence increased"
            if abs(prev - b) <= rel_tol * max(1.0, prev):
                return b
        prev = b
        N = M / s
        M = N @ N
    return b


def spectral_radius(A) -> float:
    """Spectral radius, dispatching Hermitian inputs to the exact eigenvalue
    route and everything else to the squaring iteration."""
    A = as_matrix(A)
    if frobenius(A - A.conj().T) <= HERM_RESID_TOL * (1.0 + frobenius(A)):
        lam = herm_eig(A).eigenvalues
        return max(abs(float(lam[0])), abs(float(lam[-1])))
    return spectral_radius_general(A)


def alpha_min_bound(A, *, search_tol: float | None = None) -> QuantityResult:
    """min over alpha in [0,1] of || alpha |A|^2 + (1-alpha) |A*|^2 ||.

    The objective is a pointwise maximum of affine functions of alpha, hence
    convex, so golden-section search is exact up to the bracket width. Ties
    resolve toward the smaller alpha.
    """
    A = as_matrix(A)
    tol = ALPHA_SEARCH_TOL if search_tol is None else search_tol
    G1 = A.conj().T @ A
    G2 = A @ A.conj().T
    G1 = 0.5 * (G1 + G1.conj().T)
    G2 = 0.5 * (G2 + G2.conj().T)

    def f(a: float) -> float:
        return float(np.linalg.eigvalsh(a * G1 + (1.0 - a) * G2)[-1])

    x, fx, evals = golden_section_min(f, 0.0, 1.0, tol)
    return QuantityResult(value=fx, kind="alpha_bound", alpha_star=x, iterations=evals)
