"""Seeded generators for the matrix families the verification sweeps draw from.

A draw is a pure function of (spec, trial): every trial derives its own
generator from ``SeedSequence([seed, trial])``, so streams are bit-identical
across platforms, processes and thread counts, and trials can be evaluated
in any order or in parallel.

PRNG contract: numpy ``PCG64`` behind ``default_rng``, keyed as above. The
generator identity is part of reproducibility; changing it is a breaking
change.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matcore import as_matrix

__all__ = [
    "FAMILIES",
    "EnsembleSpec",
    "trial_rng",
    "draw",
    "draw_arity",
    "worked_example",
    "WORKED_EXAMPLES",
    "canonical_nilpotent_pair",
    "spec_to_json",
    "spec_from_json",
]

# Families with a free ``count`` parameter yield tuples of i.i.d. draws.
_GENERIC = ("ginibre", "hermitian_gauss", "normal", "unitary")
_STRUCTURED = (
    "nilpotent_rank1",
    "alpha_oplus_B",
    "intertwined_pair",
    "nilpotent_pair",
    "jordan_shifted",
)
FAMILIES = _GENERIC + _STRUCTURED


@dataclass(frozen=True)
class EnsembleSpec:
    """A named random family with dimension, seed and family parameters,
    defining one reproducible matrix stream."""

    family: str
    n: int
    seed: int
    params: dict = field(default_factory=dict)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """The per-trial generator: PCG64 keyed by hashing (seed, trial)."""
    seed = int(seed)
    trial = int(trial)
    if seed < 0 or trial < 0:
        raise ValueError("seed and trial index must be non-negative")
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def _as_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex parameter must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    return complex(v)


def _complex_gauss(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def _unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    v = _complex_gauss(rng, n)
    return v / np.linalg.norm(v)


def _orthonormal_pair(rng: np.random.Generator, n: int):
    """Unit u and unit v with <u, v> = 0 (two Gram-Schmidt passes)."""
    u = _unit_vector(rng, n)
    v = _complex_gauss(rng, n)
    for _ in range(2):
        v = v - u * (u.conj() @ v)
    return u, v / np.linalg.norm(v)


def _ginibre(rng, n):
    return _complex_gauss(rng, (n, n))


def _hermitian_gauss(rng, n, psd=False):
    G = _ginibre(rng, n)
    if psd:
        return G @ G.conj().T
    return 0.5 * (G + G.conj().T)


def _haar_unitary(rng, n):
    Q, R = np.linalg.qr(_ginibre(rng, n))
    d = np.diagonal(R).copy()
    d[d == 0] = 1.0
    return Q * (d / np.abs(d))


def _normal(rng, n):
    U = _haar_unitary(rng, n)
    z = _complex_gauss(rng, n)
    return (U * z) @ U.conj().T


def _nilpotent_rank1(rng, n):
    u, v = _orthonormal_pair(rng, n)
    z = complex(_complex_gauss(rng, ()))
    return z * np.outer(u, v.conj())


def _alpha_oplus_b(rng, n, alpha=None):
    alpha = complex(_complex_gauss(rng, ())) if alpha is None else _as_complex(alpha)
    B = _ginibre(rng, n - 1)
    t = rng.uniform(0.0, 1.0)
    nb = np.linalg.norm(B, 2)
    if nb > 0:
        B = B * (t * abs(alpha) / nb)
    D = np.zeros((n, n), dtype=complex)
    D[0, 0] = alpha
    D[1:, 1:] = B
    U = _haar_unitary(rng, n)
    return U @ D @ U.conj().T


def _intertwined_pair(rng, n):
    """A generic A and a Hermitian B = p(|A|) for a random real cubic p.

    B commutes with |A| and is self-adjoint, so |A|B = B*|A| up to rounding.
    Built from the eigenbasis of A*A so the commutation is exact in exact
    arithmetic.
    """
    A = _ginibre(rng, n)
    G = A.conj().T @ A
    lam, V = np.linalg.eigh(0.5 * (G + G.conj().T))
    sv = np.sqrt(np.clip(lam, 0.0, None))
    coeff = rng.standard_normal(4)
    p = coeff[0] + coeff[1] * sv + coeff[2] * sv**2 + coeff[3] * sv**3
    B = (V * p) @ V.conj().T
    return A, 0.5 * (B + B.conj().T)


def _nilpotent_pair(rng, n):
    u, v = _orthonormal_pair(rng, n)
    return np.outer(u, v.conj()), np.outer(v, u.conj())


def _jordan_shifted(rng, n, lam=None, mu=None):
    lam = complex(_complex_gauss(rng, ())) if lam is None else _as_complex(lam)
    mu = complex(_complex_gauss(rng, ())) if mu is None else _as_complex(mu)
    N = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    N[idx, idx + 1] = 1.0
    return lam * np.eye(n, dtype=complex) + mu * N


def draw_arity(spec: EnsembleSpec) -> int:
    """How many matrices one trial of this spec yields."""
    if spec.family in ("intertwined_pair", "nilpotent_pair"):
        return 2
    if spec.family in _GENERIC:
        return int(spec.params.get("count", 1))
    return 1


def draw(spec: EnsembleSpec, trial: int):
    """Draw trial ``trial`` of the stream: a matrix, or a tuple for pair
    families and for generic families with a ``count`` parameter."""
    fam = spec.family
    if fam not in FAMILIES:
        raise ValueError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
    n = int(spec.n)
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if fam in _STRUCTURED and n < 2:
        raise ValueError(f"family {fam!r} needs n >= 2, got {n}")
    rng = trial_rng(spec.seed, trial)

    if fam in _GENERIC:
        count = int(spec.params.get("count", 1))
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        if fam == "ginibre":
            one = lambda: _ginibre(rng, n)
        elif fam == "hermitian_gauss":
            psd = bool(spec.params.get("psd", False))
            one = lambda: _hermitian_gauss(rng, n, psd=psd)
        elif fam == "normal":
            one = lambda: _normal(rng, n)
        else:
            one = lambda: _haar_unitary(rng, n)
        if count == 1:
            return one()
        return tuple(one() for _ in range(count))

    if fam == "nilpotent_rank1":
        return _nilpotent_rank1(rng, n)
    if fam == "alpha_oplus_B":
        return _alpha_oplus_b(rng, n, alpha=spec.params.get("alpha"))
    if fam == "intertwined_pair":
        return _intertwined_pair(rng, n)
    if fam == "nilpotent_pair":
        return _nilpotent_pair(rng, n)
    return _jordan_shifted(rng, n, lam=spec.params.get("lam"), mu=spec.params.get("mu"))


def canonical_nilpotent_pair(n: int = 2):
    """The coordinate pair A = e1 e2*, B = e2 e1* (so A^2 = B^2 = 0)."""
    if n < 2:
        raise ValueError("need n >= 2")
    A = np.zeros((n, n), dtype=complex)
    A[0, 1] = 1.0
    B = np.zeros((n, n), dtype=complex)
    B[1, 0] = 1.0
    return A, B


# The two integer matrices every reproduction run checks against known
# closed-form values. ``example2x2`` has r(|A||A*|) = 9 strictly below
# ||A^2|| = sqrt(59 + 10 sqrt(34)); ``example3x3`` attains w = ||A||/2 with
# r(|A||A*|) = ||A^2|| = 1.
WORKED_EXAMPLES = {
    "example2x2": [[1, 4], [1, 1]],
    "example3x3": [[0, 3, 0], [0, 0, 0], [0, 0, 1]],
}


def worked_example(name: str) -> np.ndarray:
    """Return one of the named integer example matrices."""
    if name not in WORKED_EXAMPLES:
        raise ValueError(
            f"unknown example {name!r}; expected one of {', '.join(sorted(WORKED_EXAMPLES))}"
        )
    return as_matrix(WORKED_EXAMPLES[name], name)


def _param_to_json(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def spec_to_json(spec: EnsembleSpec) -> dict:
    """Plain-dict form: {"family", "n", "seed", "params"}."""
    return {
        "family": spec.family,
        "n": int(spec.n),
        "seed": int(spec.seed),
        "params": {k: _param_to_json(v) for k, v in spec.params.items()},
    }


def spec_from_json(obj) -> EnsembleSpec:
    if not isinstance(obj, dict):
        raise ValueError(f"expected a JSON object, got {type(obj).__name__}")
    try:
        return EnsembleSpec(
            family=str(obj["family"]),
            n=int(obj["n"]),
            seed=int(obj["seed"]),
            params=dict(obj.get("params", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"invalid ensemble spec: {exc}") from None
