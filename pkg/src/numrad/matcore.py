"""Dense complex matrix primitives.

Adjoint and Cartesian parts, Hermitian eigendecomposition, PSD functional
calculus (square roots and fractional powers), 2x2 block assembly, and the
JSON interchange format used by the command-line tools. Everything operates
on square ``complex128`` numpy arrays, treats its inputs as read-only, and
returns fresh arrays, so values are safe to share across threads.
"""

from __future__ import annotations

import hashlib
import json
import math
import struct
from dataclasses import dataclass

import numpy as np

from .tolerances import HERM_RESID_TOL, PSD_CLAMP_REL

__all__ = [
    "as_matrix",
    "frobenius",
    "matrix_algebra",
    "adjoint",
    "cartesian_parts",
    "HermEig",
    "herm_eig",
    "SVDResult",
    "svd",
    "op_norm",
    "power_psd",
    "sqrt_psd",
    "abs_parts",
    "block2",
    "matrix_to_json",
    "matrix_from_json",
    "save_matrix",
    "load_matrix",
    "matrix_digest",
]


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a square complex128 array with finite entries."""
    A = np.asarray(a, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"{name} must be a square n x n array with n >= 1, got shape {A.shape}")
    if not np.isfinite(A).all():
        raise ValueError(f"{name} contains non-finite entries")
    return A


def frobenius(A) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(A)))


def matrix_algebra(A, B, op: str, scalar: complex | None = None) -> np.ndarray:
    """Ring operations on matrices: ``add``, ``sub``, ``mul`` and ``scale``.

    ``scale`` multiplies A by ``scalar`` and ignores B. Dimension mismatches
    report both shapes.
    """
    A = as_matrix(A, "A")
    if op == "scale":
        if scalar is None:
            raise ValueError("op 'scale' requires a scalar")
        return A * complex(scalar)
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise ValueError(
            f"dimension mismatch: A is {A.shape[0]}x{A.shape[1]}, B is {B.shape[0]}x{B.shape[1]}"
        )
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A @ B
    raise ValueError(f"unknown op {op!r}; expected one of add, sub, mul, scale")


def adjoint(A) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(A).conj().T.copy()


def _hermitize(H: np.ndarray) -> np.ndarray:
    return 0.5 * (H + H.conj().T)


def cartesian_parts(A) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian pair (Re, Im) with A = Re + i*Im.

    Both parts are symmetrized exactly after the arithmetic, so downstream
    eigendecompositions see bit-identical Hermitian inputs regardless of how
    A was assembled.
    """
    A = as_matrix(A)
    St = A.conj().T
    re = 0.5 * (A + St)
    im = (A - St) / 2j
    return _hermitize(re), _hermitize(im)


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` is real and ascending; ``vectors`` has orthonormal
    columns, so ``vectors @ diag(eigenvalues) @ vectors*`` reconstructs the
    (symmetrized) input.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray


def herm_eig(H, name: str = "matrix") -> HermEig:
    """Eigendecomposition of a Hermitian matrix, ascending eigenvalues.

    The input is symmetrized before factorization; inputs whose Hermiticity
    residual exceeds the accepted budget are rejected.
    """
    H = as_matrix(H, name)
    resid = frobenius(H - H.conj().T)
    if resid > HERM_RESID_TOL * (1.0 + frobenius(H)):
        raise ValueError(
            f"{name} is not Hermitian: residual ||H - H*||_F = {resid:.3e} exceeds "
            f"{HERM_RESID_TOL:g} * (1 + ||H||_F)"
        )
    lam, V = np.linalg.eigh(_hermitize(H))
    return HermEig(eigenvalues=lam, vectors=V)


@dataclass(frozen=True)
class SVDResult:
    """Singular value decomposition A = left @ diag(singular_values) @ right*.

    Singular values are descending and nonnegative; both factors have
    orthonormal columns.
    """

    singular_values: np.ndarray
    left: np.ndarray
    right: np.ndarray


def svd(A) -> SVDResult:
    """Full SVD of a square matrix."""
    A = as_matrix(A)
    U, s, Vh = np.linalg.svd(A)
    return SVDResult(singular_values=s, left=U, right=Vh.conj().T)


def op_norm(A) -> float:
    """Operator (spectral) norm: the largest singular value.

    Computed as sqrt(lambda_max(A* A)), with tiny negative rounding in the
    Gram matrix clamped to zero.
    """
    A = as_matrix(A)
    G = A.conj().T @ A
    lam = float(np.linalg.eigvalsh(_hermitize(G))[-1])
    return math.sqrt(max(lam, 0.0))


def power_psd(P, s: float) -> np.ndarray:
    """Fractional power P^s of a Hermitian PSD matrix, s in [0, 1].

    Eigenvalues within PSD_CLAMP_REL * ||P|| of zero — rounding noise from
    forming Gram products — are clamped to exactly zero on both sides, so
    fractional powers do not amplify noise in rank-deficient inputs.
    Materially negative eigenvalues are an error.
    """
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"power exponent must lie in [0, 1], got {s}")
    eig = herm_eig(P)
    lam = eig.eigenvalues
    scale = max(abs(float(lam[0])), abs(float(lam[-1])))
    if float(lam[0]) < -PSD_CLAMP_REL * scale:
        raise ValueError(
            f"not PSD: smallest eigenvalue {float(lam[0]):.6e} is below "
            f"-{PSD_CLAMP_REL:g} * ||P||"
        )
    clamped = np.where(lam <= PSD_CLAMP_REL * scale, 0.0, lam)
    powered = clamped**s
    M = (eig.vectors * powered) @ eig.vectors.conj().T
    return _hermitize(M)


def sqrt_psd(P) -> np.ndarray:
    """PSD square root of a Hermitian PSD matrix."""
    return power_psd(P, 0.5)


def abs_parts(A) -> tuple[np.ndarray, np.ndarray]:
    """Positive parts (|A|, |A*|) = ((A*A)^(1/2), (AA*)^(1/2))."""
    A = as_matrix(A)
    return sqrt_psd(A.conj().T @ A), sqrt_psd(A @ A.conj().T)


def block2(A, X, Y, B) -> np.ndarray:
    """Assemble the 2n x 2n block matrix [[A, X], [Y, B]] from n x n blocks."""
    A = as_matrix(A, "A")
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    B = as_matrix(B, "B")
    shapes = {A.shape, X.shape, Y.shape, B.shape}
    if len(shapes) != 1:
        raise ValueError(f"all four blocks must share one n x n shape, got {sorted(shapes)}")
    return np.block([[A, X], [Y, B]])


# --- JSON interchange -------------------------------------------------------
#
# {"n": <int>, "re": [[...]], "im": [[...]]} with "im" optional (zero).
# Row-major entry order; numbers are decimal doubles.


def matrix_to_json(A) -> dict:
    """Plain-dict form of a matrix for JSON serialization."""
    A = as_matrix(A)
    return {
        "n": int(A.shape[0]),
        "re": [[float(x) for x in row] for row in A.real],
        "im": [[float(x) for x in row] for row in A.imag],
    }


def matrix_from_json(obj, name: str = "matrix") -> np.ndarray:
    """Parse the {"n", "re", "im"} dict form; "im" defaults to zero."""
    if not isinstance(obj, dict):
        raise ValueError(f"{name}: expected a JSON object, got {type(obj).__name__}")
    try:
        n = int(obj["n"])
    except (KeyError, TypeError, ValueError):
        raise ValueError(f"{name}: missing or invalid integer field 'n'") from None
    if n < 1:
        raise ValueError(f"{name}: 'n' must be >= 1, got {n}")
    if "re" not in obj:
        raise ValueError(f"{name}: missing field 're'")
    re = np.asarray(obj["re"], dtype=np.float64)
    im = np.asarray(obj.get("im", np.zeros((n, n))), dtype=np.float64)
    for label, part in (("re", re), ("im", im)):
        if part.shape != (n, n):
            raise ValueError(f"{name}: field '{label}' must be {n}x{n}, got shape {part.shape}")
    return as_matrix(re + 1j * im, name)


def save_matrix(path, A) -> None:
    """Write a matrix to a JSON file."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(A), fh)
        fh.write("\n")


def load_matrix(path) -> np.ndarray:
    """Read a matrix from a JSON file, annotating parse errors with position."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"{path}: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return matrix_from_json(obj, name=str(path))


def matrix_digest(*mats) -> str:
    """64-bit hex digest of the canonical byte layout of one or more matrices.

    Canonical form: for each matrix, the dimension as a little-endian uint64
    followed by row-major (re, im) little-endian double pairs.
    """
    h = hashlib.blake2b(digest_size=8)
    for M in mats:
        M = as_matrix(M)
        h.update(struct.pack("<Q", M.shape[0]))
        h.update(np.ascontiguousarray(M, dtype="<c16").tobytes())
    return h.hexdigest()
