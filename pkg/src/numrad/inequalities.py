"""Machine-checkable catalog of numerical-radius, norm and spectral-radius
inequalities.

Every entry evaluates both sides of one displayed inequality (or chain of
inequalities) on concrete matrices and returns a :class:`BoundReport`. A
chain is a single report whose ``details["links"]`` carries each link; the
report-level lhs/rhs/slack come from the binding link, the one with the
smallest normalized slack, so the ``holds`` flag is equivalent to "every
link holds".

Entries with a sign parameter (the ``AB + BA`` / ``AB - BA`` pairs) share a
catalog id and are evaluated once per sign. Entries with a hypothesis (PSD
inputs, the intertwining condition |A|B = B*|A|) report ``applicable=False``
with the measured residual instead of a verdict when the hypothesis fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .matcore import (
    as_matrix,
    block2,
    frobenius,
    matrix_digest,
    op_norm,
    power_psd,
    sqrt_psd,
)
from .quantities import (
    alpha_min_bound,
    crawford_hermitian,
    numerical_radius,
    spectral_radius,
    spectral_radius_psd_product,
)
from .tolerances import HERM_RESID_TOL, IMPLICATION_TOL, INTERTWINE_TOL, PSD_CLAMP_REL, TOL_CMP

__all__ = [
    "BoundReport",
    "CatalogEntry",
    "QuantityCache",
    "mu",
    "evaluate",
    "evaluate_entries",
    "check_implication",
    "catalog_list",
    "catalog_entry",
    "IMPLICATION_IDS",
    "BOUND_REPORT_SCHEMA",
]

_SQRT8 = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog row: id, input arity, whether it takes a +/- sign, its
    hypothesis (empty when unconditional), and the inequality statement."""

    inequality_id: str
    arity: int
    signed: bool
    precondition: str
    statement: str


@dataclass(frozen=True)
class BoundReport:
    """One inequality instance evaluated on concrete inputs.

    ``holds`` is lhs <= rhs + tol_cmp * max(1, |rhs|) of the binding link.
    When ``applicable`` is false the numeric fields are None and ``details``
    carries the reason.
    """

    inequality_id: str
    sign: str
    lhs: float | None
    rhs: float | None
    slack: float | None
    holds: bool | None
    applicable: bool
    inputs_digest: str
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        obj = {
            "id": self.inequality_id,
            "sign": self.sign,
            "applicable": bool(self.applicable),
            "details": self.details,
            "inputs_digest": self.inputs_digest,
        }
        if self.applicable:
            obj["lhs"] = self.lhs
            obj["rhs"] = self.rhs
            obj["slack"] = self.slack
            obj["holds"] = self.holds
        return obj


BOUND_REPORT_SCHEMA = {
    "type": "object",
    "required": ["id", "sign", "applicable", "details", "inputs_digest"],
    "properties": {
        "id": {"type": "string"},
        "sign": {"enum": ["+", "-", "n/a"]},
        "lhs": {"type": "number"},
        "rhs": {"type": "number"},
        "slack": {"type": "number"},
        "holds": {"type": "boolean"},
        "applicable": {"type": "boolean"},
        "details": {"type": "object"},
        "inputs_digest": {"type": "string", "pattern": "^[0-9a-f]{16}$"},
    },
    "additionalProperties": False,
}


def mu(A, B) -> float:
    """mu(A, B) = (||A||^2 + ||B||^2 + sqrt((||A||^2 - ||B||^2)^2 + 4 ||BA||^2)) / 2."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise ValueError(
            f"dimension mismatch: A is {A.shape[0]}x{A.shape[1]}, B is {B.shape[0]}x{B.shape[1]}"
        )
    a = op_norm(A) ** 2
    b = op_norm(B) ** 2
    c = op_norm(B @ A)
    return 0.5 * (a + b + math.sqrt((a - b) ** 2 + 4.0 * c * c))


class QuantityCache:
    """Memoized quantities of one tuple of input matrices.

    Many catalog entries share the expensive scalars of a trial (numerical
    radii, norms, positive parts); evaluating them against one cache computes
    each scalar once. Expression-level results are keyed by structural tags,
    so the same derived matrix (say AB - BA) is also shared.
    """

    def __init__(self, mats, *, grid: int | None = None, refine_tol: float | None = None):
        self.mats = tuple(as_matrix(M, f"input {i}") for i, M in enumerate(mats))
        n0 = self.mats[0].shape[0]
        for i, M in enumerate(self.mats[1:], start=1):
            if M.shape[0] != n0:
                raise ValueError(
                    f"all inputs must share one dimension: input 0 is {n0}x{n0}, "
                    f"input {i} is {M.shape[0]}x{M.shape[0]}"
                )
        self.grid = grid
        self.refine_tol = refine_tol
        self._memo: dict = {}

    def _get(self, key, fn):
        try:
            return self._memo[key]
        except KeyError:
            val = fn()
            self._memo[key] = val
            return val

    # -- derived matrices ---------------------------------------------------

    def mat_expr(self, key, build) -> np.ndarray:
        return self._get(("mat", key), build)

    def product(self, i: int, j: int) -> np.ndarray:
        return self.mat_expr(("prod", i, j), lambda: self.mats[i] @ self.mats[j])

    def commutator(self, i: int, j: int, sgn: int) -> np.ndarray:
        return self.mat_expr(
            ("comm", sgn, i, j),
            lambda: self.product(i, j) + sgn * self.product(j, i),
        )

    def re_part(self, i: int) -> np.ndarray:
        def build():
            A = self.mats[i]
            return 0.25 * ((A + A.conj().T) + (A + A.conj().T).conj().T)

        return self.mat_expr(("re", i), build)

    def im_part(self, i: int) -> np.ndarray:
        def build():
            A = self.mats[i]
            K = (A - A.conj().T) / 2j
            return 0.5 * (K + K.conj().T)

        return self.mat_expr(("im", i), build)

    def abs_pair(self, i: int):
        def build():
            A = self.mats[i]
            return sqrt_psd(A.conj().T @ A), sqrt_psd(A @ A.conj().T)

        return self._get(("abs", i), build)

    def abs_power(self, i: int, s: float, star: bool) -> np.ndarray:
        P = self.abs_pair(i)[1 if star else 0]
        return self.mat_expr(("abspow", i, float(s), star), lambda: power_psd(P, s))

    # -- scalar quantities ----------------------------------------------------

    def w_expr(self, key, build) -> float:
        return self._get(
            ("w", key),
            lambda: float(
                numerical_radius(build(), grid=self.grid, refine_tol=self.refine_tol).value
            ),
        )

    def norm_expr(self, key, build) -> float:
        return self._get(("norm", key), lambda: op_norm(build()))

    def w(self, i: int) -> float:
        return self.w_expr(i, lambda: self.mats[i])

    def norm(self, i: int) -> float:
        return self.norm_expr(i, lambda: self.mats[i])

    def w_comm(self, i: int, j: int, sgn: int) -> float:
        return self.w_expr(("comm", sgn, i, j), lambda: self.commutator(i, j, sgn))

    def w_product(self, i: int, j: int) -> float:
        return self.w_expr(("prod", i, j), lambda: self.product(i, j))

    def norm_sq_mat(self, i: int) -> float:
        """||A_i^2||."""
        return self.norm_expr(("sq", i), lambda: self.mats[i] @ self.mats[i])

    def gram_sum_norm(self, i: int) -> float:
        """||A* A + A A*||."""

        def build():
            A = self.mats[i]
            return A.conj().T @ A + A @ A.conj().T

        return self.norm_expr(("gramsum", i), build)

    def norm_re(self, i: int) -> float:
        return self.norm_expr(("re", i), lambda: self.re_part(i))

    def norm_im(self, i: int) -> float:
        return self.norm_expr(("im", i), lambda: self.im_part(i))

    def c_re(self, i: int) -> float:
        return self._get(("c_re", i), lambda: crawford_hermitian(self.re_part(i)))

    def c_im(self, i: int) -> float:
        return self._get(("c_im", i), lambda: crawford_hermitian(self.im_part(i)))

    def r(self, i: int) -> float:
        return self._get(("r", i), lambda: spectral_radius(self.mats[i]))

    def r_abs_product(self, i: int) -> float:
        def compute():
            absA, absAstar = self.abs_pair(i)
            return spectral_radius_psd_product(absA, absAstar)

        return self._get(("r_absprod", i), compute)

    def w_abs_product(self, i: int) -> float:
        def build():
            absA, absAstar = self.abs_pair(i)
            return absA @ absAstar

        return self.w_expr(("absprod", i), build)

    def alpha_min(self, i: int):
        return self._get(("alpha", i), lambda: alpha_min_bound(self.mats[i]))

    def mu_of(self, i: int, j: int) -> float:
        def compute():
            a = self.norm(i) ** 2
            b = self.norm(j) ** 2
            c = self.norm_expr(("prod", j, i), lambda: self.product(j, i))
            return 0.5 * (a + b + math.sqrt((a - b) ** 2 + 4.0 * c * c))

        return self._get(("mu", i, j), compute)

    def intertwine_residual(self, i: int, j: int) -> float:
        """||  |A_i| A_j - A_j* |A_i|  ||_F."""

        def compute():
            absA = self.abs_pair(i)[0]
            B = self.mats[j]
            return frobenius(absA @ B - B.conj().T @ absA)

        return self._get(("intertwine", i, j), compute)

    def intertwined(self, i: int, j: int) -> bool:
        res = self.intertwine_residual(i, j)
        return res <= INTERTWINE_TOL * (1.0 + self.norm(i) * self.norm(j))


# --- evaluator plumbing -------------------------------------------------------


class _Outcome:
    __slots__ = ("applicable", "reason", "links", "details")

    def __init__(self, links=None, details=None, reason=""):
        self.applicable = not reason
        self.reason = reason
        self.links = links or []
        self.details = details or {}


def _ok(links, details=None) -> _Outcome:
    return _Outcome(links=links, details=details)


def _na(reason, details=None) -> _Outcome:
    return _Outcome(reason=reason, details=details)


def _psd_failure(M, label: str) -> str | None:
    """Reason string when M is not Hermitian PSD within clamping tolerance."""
    M = as_matrix(M, label)
    herm_resid = frobenius(M - M.conj().T)
    if herm_resid > HERM_RESID_TOL * (1.0 + frobenius(M)):
        return f"{label} is not Hermitian (residual {herm_resid:.3e})"
    lam = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
    scale = max(abs(float(lam[0])), abs(float(lam[-1])))
    if float(lam[0]) < -PSD_CLAMP_REL * scale:
        return f"{label} is not PSD (smallest eigenvalue {float(lam[0]):.3e})"
    return None


def _root(x: float) -> float:
    return math.sqrt(max(x, 0.0))


def _gate_intertwined(q: QuantityCache) -> _Outcome | None:
    res = q.intertwine_residual(0, 1)
    if not q.intertwined(0, 1):
        return _na(
            "intertwining hypothesis |A|B = B*|A| fails",
            details={"intertwine_residual": float(res)},
        )
    return None


# --- entry evaluators ---------------------------------------------------------


def _ev_eqv(q, sgn, p):
    w = q.w(0)
    n = q.norm(0)
    return _ok([("lower", 0.5 * n, w), ("upper", w, n)])


def _ev_kit05(q, sgn, p):
    g = q.gram_sum_norm(0)
    w2 = q.w(0) ** 2
    return _ok([("lower", 0.25 * g, w2), ("upper", w2, 0.5 * g)])


def _ev_kit03(q, sgn, p):
    rhs = 0.5 * (q.norm(0) + _root(q.norm_sq_mat(0)))
    return _ok([("bound", q.w(0), rhs)], details={"norm_A_squared": q.norm_sq_mat(0)})


def _ev_bp_alpha(q, sgn, p):
    res = q.alpha_min(0)
    return _ok(
        [("bound", q.w(0) ** 2, res.value)],
        details={"alpha_star": float(res.alpha_star)},
    )


def _ev_bp_chain(q, sgn, p):
    g4 = 0.25 * q.gram_sum_norm(0)
    parts = 0.5 * (q.norm_re(0) ** 2 + q.norm_im(0) ** 2)
    lift = 0.5 * (q.c_re(0) ** 2 + q.c_im(0) ** 2)
    w2 = q.w(0) ** 2
    return _ok(
        [
            ("gram_vs_parts", g4, parts),
            ("crawford_lift", parts, parts + lift),
            ("parts_vs_w", parts + lift, w2),
        ]
    )


def _ev_main(q, sgn, p):
    rp = q.r_abs_product(0)
    rhs = 0.5 * (q.norm(0) + _root(rp))
    return _ok([("bound", q.w(0), rhs)], details={"r_abs_product": float(rp)})


def _ev_main_dom(q, sgn, p):
    rp = q.r_abs_product(0)
    wp = q.w_abs_product(0)
    return _ok([("r_vs_w", rp, wp), ("w_vs_norm", wp, q.norm_sq_mat(0))])


def _ev_ksum(q, sgn, p):
    for i, label in ((0, "A"), (1, "B")):
        why = _psd_failure(q.mats[i], label)
        if why:
            return _na(why)
    A, B = q.mats
    lhs = op_norm(A + B)
    cross = op_norm(sqrt_psd(A) @ sqrt_psd(B))
    return _ok([("bound", lhs, max(q.norm(0), q.norm(1)) + cross)])


def _ev_gen_fg(q, sgn, p):
    s = float(p.get("s", 0.5))
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"parameter s must lie in [0, 1], got {s}")
    gate = _gate_intertwined(q)
    if gate:
        return gate
    F = q.abs_power(0, s, star=False)
    G = q.abs_power(0, 1.0 - s, star=True)
    rB = q.r(1)
    nf = op_norm(F)
    ng = op_norm(G)
    rhs = 0.5 * rB * (max(nf * nf, ng * ng) + op_norm(F @ G))
    return _ok(
        [("bound", q.w_product(0, 1), rhs)],
        details={"s": s, "r_B": float(rB), "intertwine_residual": float(q.intertwine_residual(0, 1))},
    )


def _ev_prod(q, sgn, p):
    gate = _gate_intertwined(q)
    if gate:
        return gate
    rB = q.r(1)
    fa = q.norm(0) + _root(q.r_abs_product(0))
    fb = q.norm(1) + _root(q.r_abs_product(1))
    mid = 0.5 * rB * fa
    return _ok(
        [("first", q.w_product(0, 1), mid), ("second", mid, 0.25 * fb * fa)],
        details={"r_B": float(rB)},
    )


def _ev_alomari(q, sgn, p):
    gate = _gate_intertwined(q)
    if gate:
        return gate
    rhs = 0.25 * (q.norm(1) + _root(q.norm_sq_mat(1))) * (q.norm(0) + _root(q.norm_sq_mat(0)))
    return _ok([("bound", q.w_product(0, 1), rhs)])


def _ev_bp_self(q, sgn, p):
    rhs = 4.0 * (q.w(0) ** 2 - 0.5 * (q.c_re(0) ** 2 + q.c_im(0) ** 2))
    return _ok([("bound", q.gram_sum_norm(0), rhs)])


def _ev_axb(q, sgn, p):
    A, B, X, Y = q.mats

    def build():
        return A @ X @ B + sgn * (B @ Y @ A)

    lhs = q.w_expr(("axb", sgn), build)
    root = _root(q.w(0) ** 2 - 0.5 * (q.c_re(0) ** 2 + q.c_im(0) ** 2))
    rhs = _SQRT8 * q.norm(1) * max(q.norm(2), q.norm(3)) * root
    return _ok([("bound", lhs, rhs)])


def _ev_fh(q, sgn, p):
    return _ok([("bound", q.w_comm(0, 1, sgn), _SQRT8 * q.norm(1) * q.w(0))])


def _ev_hk(q, sgn, p):
    root = _root(q.w(0) ** 2 - 0.5 * abs(q.norm_re(0) ** 2 - q.norm_im(0) ** 2))
    return _ok([("bound", q.w_comm(0, 1, sgn), _SQRT8 * q.norm(1) * root)])


def _ev_comm_a(q, sgn, p):
    root = _root(q.w(0) ** 2 - 0.5 * (q.c_re(0) ** 2 + q.c_im(0) ** 2))
    return _ok([("bound", q.w_comm(0, 1, sgn), _SQRT8 * q.norm(1) * root)])


def _ev_comm_b(q, sgn, p):
    root = _root(q.w(1) ** 2 - 0.5 * (q.c_re(1) ** 2 + q.c_im(1) ** 2))
    return _ok([("bound", q.w_comm(0, 1, sgn), _SQRT8 * q.norm(0) * root)])


def _mix(q, sgn):
    """w(A X + sgn * B Y) for the quadruple (A, B, X, Y)."""
    A, B, X, Y = q.mats
    return q.w_expr(("mix", sgn), lambda: A @ X + sgn * (B @ Y))


def _ev_ok(q, sgn, p):
    A, B, X, Y = q.mats
    f1 = q.norm_expr(("okl",), lambda: A @ A.conj().T + Y.conj().T @ Y)
    f2 = q.norm_expr(("okr",), lambda: X.conj().T @ X + B @ B.conj().T)
    return _ok([("bound", _mix(q, sgn) ** 2, f1 * f2)])


def _ev_hd_block(q, sgn, p):
    A, X, Y, B = q.mats
    lhs = q.norm_expr(("block",), lambda: block2(A, X, Y, B))
    gauge = np.array(
        [[q.norm(0), q.norm(1)], [q.norm(2), q.norm(3)]], dtype=complex
    )
    return _ok([("bound", lhs, op_norm(gauge))])


def _ev_mu(q, sgn, p):
    A, B = q.mats
    lhs = q.norm_expr(("mul",), lambda: A @ A.conj().T + B.conj().T @ B)
    m = q.mu_of(0, 1)
    return _ok([("bound", lhs, m)], details={"mu": float(m)})


def _ev_mu_max(q, sgn, p):
    rhs = max(q.norm(0) ** 2, q.norm(1) ** 2) + q.norm_expr(
        ("prod", 1, 0), lambda: q.product(1, 0)
    )
    return _ok([("bound", q.mu_of(0, 1), rhs)])


def _ev_selfmu(q, sgn, p):
    return _ok([("bound", q.gram_sum_norm(0), q.norm(0) ** 2 + q.norm_sq_mat(0))])


def _ev_muxy(q, sgn, p):
    m1 = q.mu_of(0, 3)
    m2 = q.mu_of(1, 2)
    return _ok(
        [("bound", _mix(q, sgn), math.sqrt(m1 * m2))],
        details={"mu_AY": float(m1), "mu_BX": float(m2)},
    )


def _ev_comm_mu(q, sgn, p):
    f1 = q.norm(0) ** 2 + q.norm_sq_mat(0)
    f2 = q.norm(1) ** 2 + q.norm_sq_mat(1)
    return _ok([("bound", q.w_comm(0, 1, sgn), math.sqrt(f1 * f2))])


_INTERTWINE_PRE = "intertwining |A|B = B*|A| (Frobenius residual <= 1e-10 * (1 + ||A|| ||B||))"

_CATALOG: list[tuple[CatalogEntry, object]] = [
    (CatalogEntry("I-EQV", 1, False, "", "||A||/2 <= w(A) <= ||A||"), _ev_eqv),
    (CatalogEntry("I-KIT05", 1, False, "", "||A*A+AA*||/4 <= w(A)^2 <= ||A*A+AA*||/2"), _ev_kit05),
    (CatalogEntry("I-KIT03", 1, False, "", "w(A) <= (||A|| + ||A^2||^(1/2))/2"), _ev_kit03),
    (
        CatalogEntry(
            "I-BP-ALPHA", 1, False, "", "w(A)^2 <= min_{0<=a<=1} ||a |A|^2 + (1-a) |A*|^2||"
        ),
        _ev_bp_alpha,
    ),
    (
        CatalogEntry(
            "I-BP-CHAIN",
            1,
            False,
            "",
            "||A*A+AA*||/4 <= (||A+A*||^2+||A-A*||^2)/8 "
            "<= (||A+A*||^2+||A-A*||^2)/8 + (c^2(A+A*)+c^2(A-A*))/8 <= w(A)^2",
        ),
        _ev_bp_chain,
    ),
    (CatalogEntry("I-MAIN", 1, False, "", "w(A) <= (||A|| + r(|A||A*|)^(1/2))/2"), _ev_main),
    (
        CatalogEntry("I-MAIN-DOM", 1, False, "", "r(|A||A*|) <= w(|A||A*|) <= ||A^2||"),
        _ev_main_dom,
    ),
    (
        CatalogEntry(
            "I-KSUM",
            2,
            False,
            "A and B positive semidefinite",
            "||A+B|| <= max(||A||, ||B||) + ||A^(1/2) B^(1/2)||",
        ),
        _ev_ksum,
    ),
    (
        CatalogEntry(
            "I-GEN-FG",
            2,
            False,
            _INTERTWINE_PRE,
            "w(AB) <= r(B)/2 (max(||f(|A|)||^2, ||g(|A*|)||^2) + ||f(|A|) g(|A*|)||), "
            "f(t)=t^s, g(t)=t^(1-s)",
        ),
        _ev_gen_fg,
    ),
    (
        CatalogEntry(
            "I-PROD",
            2,
            False,
            _INTERTWINE_PRE,
            "w(AB) <= r(B)/2 (||A|| + r(|A||A*|)^(1/2)) "
            "<= (||B|| + r(|B||B*|)^(1/2)) (||A|| + r(|A||A*|)^(1/2)) / 4",
        ),
        _ev_prod,
    ),
    (
        CatalogEntry(
            "I-ALOMARI",
            2,
            False,
            _INTERTWINE_PRE,
            "w(AB) <= (||B|| + ||B^2||^(1/2)) (||A|| + ||A^2||^(1/2)) / 4",
        ),
        _ev_alomari,
    ),
    (
        CatalogEntry(
            "I-BP-SELF", 1, False, "", "||AA*+A*A|| <= 4 (w(A)^2 - (c^2(Re A)+c^2(Im A))/2)"
        ),
        _ev_bp_self,
    ),
    (
        CatalogEntry(
            "I-AXB",
            4,
            True,
            "",
            "w(AXB +/- BYA) <= 2 sqrt(2) ||B|| max(||X||, ||Y||) "
            "sqrt(w(A)^2 - (c^2(Re A)+c^2(Im A))/2); inputs (A, B, X, Y)",
        ),
        _ev_axb,
    ),
    (CatalogEntry("I-FH", 2, True, "", "w(AB +/- BA) <= 2 sqrt(2) ||B|| w(A)"), _ev_fh),
    (
        CatalogEntry(
            "I-HK",
            2,
            True,
            "",
            "w(AB +/- BA) <= 2 sqrt(2) ||B|| sqrt(w(A)^2 - |(||Re A||^2 - ||Im A||^2)|/2)",
        ),
        _ev_hk,
    ),
    (
        CatalogEntry(
            "I-COMM-A",
            2,
            True,
            "",
            "w(AB +/- BA) <= 2 sqrt(2) ||B|| sqrt(w(A)^2 - (c^2(Re A)+c^2(Im A))/2)",
        ),
        _ev_comm_a,
    ),
    (
        CatalogEntry(
            "I-COMM-B",
            2,
            True,
            "",
            "w(AB +/- BA) <= 2 sqrt(2) ||A|| sqrt(w(B)^2 - (c^2(Re B)+c^2(Im B))/2)",
        ),
        _ev_comm_b,
    ),
    (
        CatalogEntry(
            "I-OK",
            4,
            True,
            "",
            "w(AX +/- BY)^2 <= ||AA*+Y*Y|| ||X*X+BB*||; inputs (A, B, X, Y)",
        ),
        _ev_ok,
    ),
    (
        CatalogEntry(
            "I-HD-BLOCK",
            4,
            False,
            "",
            "|| [[A, X], [Y, B]] || <= || [[||A||, ||X||], [||Y||, ||B||]] ||; inputs (A, X, Y, B)",
        ),
        _ev_hd_block,
    ),
    (CatalogEntry("I-MU", 2, False, "", "||AA*+B*B|| <= mu(A, B)"), _ev_mu),
    (
        CatalogEntry("I-MU-MAX", 2, False, "", "mu(A, B) <= max(||A||^2, ||B||^2) + ||BA||"),
        _ev_mu_max,
    ),
    (CatalogEntry("I-SELFMU", 1, False, "", "||AA*+A*A|| <= ||A||^2 + ||A^2||"), _ev_selfmu),
    (
        CatalogEntry(
            "I-MUXY",
            4,
            True,
            "",
            "w(AX +/- BY) <= sqrt(mu(A, Y) mu(B, X)); inputs (A, B, X, Y)",
        ),
        _ev_muxy,
    ),
    (
        CatalogEntry(
            "I-COMM-MU",
            2,
            True,
            "",
            "w(AB +/- BA) <= sqrt((||A||^2+||A^2||) (||B||^2+||B^2||))",
        ),
        _ev_comm_mu,
    ),
]

_REGISTRY = {entry.inequality_id: (entry, fn) for entry, fn in _CATALOG}


def catalog_list() -> list[CatalogEntry]:
    """All catalog entries in stable definition order."""
    return [entry for entry, _ in _CATALOG]


def catalog_entry(inequality_id: str) -> CatalogEntry:
    base, _ = _split_id_sign(inequality_id)
    return _REGISTRY[base][0]


def _split_id_sign(inequality_id: str):
    """Accept "I-FH+"/"I-FH-" as shorthand for (id, sign)."""
    if inequality_id in _REGISTRY:
        return inequality_id, None
    if inequality_id and inequality_id[-1] in "+-" and inequality_id[:-1] in _REGISTRY:
        return inequality_id[:-1], inequality_id[-1]
    known = ", ".join(e.inequality_id for e, _ in _CATALOG)
    raise ValueError(f"unknown inequality id {inequality_id!r}; known ids: {known}")


def _as_link_dicts(links):
    out = []
    for name, lhs, rhs in links:
        lhs = float(lhs)
        rhs = float(rhs)
        out.append({"name": name, "lhs": lhs, "rhs": rhs, "slack": rhs - lhs})
    return out


def evaluate(
    inequality_id: str,
    mats,
    sign: str | None = None,
    *,
    tol_cmp: float | None = None,
    params: dict | None = None,
    cache: QuantityCache | None = None,
) -> BoundReport:
    """Evaluate one catalog entry on concrete matrices.

    ``sign`` selects the +/- variant of signed entries (default "+") and is
    ignored by unsigned entries. A trailing +/- on the id works as well.
    Passing a shared ``cache`` built from the same matrices lets several
    entries reuse quantities.
    """
    base, suffix_sign = _split_id_sign(inequality_id)
    entry, fn = _REGISTRY[base]
    if suffix_sign is not None:
        if sign is not None and sign != suffix_sign:
            raise ValueError(f"conflicting signs: id says {suffix_sign!r}, argument says {sign!r}")
        sign = suffix_sign

    if cache is None:
        cache = QuantityCache(mats)
    mats = cache.mats
    if len(mats) != entry.arity:
        raise ValueError(f"{base} expects {entry.arity} matrices, got {len(mats)}")

    if entry.signed:
        sign = "+" if sign is None else sign
        if sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-' for {base}, got {sign!r}")
        sgn = 1 if sign == "+" else -1
    else:
        sign = "n/a"
        sgn = 1

    outcome = fn(cache, sgn, params or {})
    digest = matrix_digest(*mats)
    tol = TOL_CMP if tol_cmp is None else tol_cmp

    if not outcome.applicable:
        details = {"reason": outcome.reason}
        details.update(outcome.details)
        return BoundReport(
            inequality_id=base,
            sign=sign,
            lhs=None,
            rhs=None,
            slack=None,
            holds=None,
            applicable=False,
            inputs_digest=digest,
            details=details,
        )

    links = _as_link_dicts(outcome.links)
    # Binding link: smallest slack normalized by its own rhs scale, so the
    # report-level holds flag is equivalent to "every link holds".
    norm_slacks = [lk["slack"] / max(1.0, abs(lk["rhs"])) for lk in links]
    bind = int(np.argmin(norm_slacks))
    lhs = links[bind]["lhs"]
    rhs = links[bind]["rhs"]
    slack = rhs - lhs
    holds = bool(slack >= -tol * max(1.0, abs(rhs)))

    details = dict(outcome.details)
    if len(links) > 1:
        details["links"] = links
        details["binding_link"] = links[bind]["name"]
    return BoundReport(
        inequality_id=base,
        sign=sign,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        holds=holds,
        applicable=True,
        inputs_digest=digest,
        details=details,
    )


def evaluate_entries(
    inequality_ids,
    mats,
    *,
    signs: str = "both",
    tol_cmp: float | None = None,
    params: dict | None = None,
    cache: QuantityCache | None = None,
) -> list[BoundReport]:
    """Evaluate several entries against one shared cache.

    ``signs`` is "both", "+" or "-" and applies to signed entries only.
    """
    if cache is None:
        cache = QuantityCache(mats)
    reports = []
    for iid in inequality_ids:
        entry = catalog_entry(iid)
        if entry.signed:
            use = ("+", "-") if signs == "both" else (signs,)
        else:
            use = (None,)
        for sg in use:
            reports.append(
                evaluate(iid, cache.mats, sg, tol_cmp=tol_cmp, params=params, cache=cache)
            )
    return reports


# --- implication checks -------------------------------------------------------

IMPLICATION_IDS = ("C2.2", "C2.4", "C3.4", "P2.5")


def _close(x: float, y: float, tol: float) -> bool:
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def _scalar_block_certificate(A: np.ndarray, tol: float):
    """Look for a unit vector spanning a reducing one-dimensional block
    [alpha] whose complementary compression B satisfies ||B|| <= |alpha|.

    Returns (found, alpha)."""
    n = A.shape[0]
    if n == 1:
        return True, complex(A[0, 0])
    nA = op_norm(A)
    scale = tol * (1.0 + nA)
    lam, V = np.linalg.eig(A)
    for k in np.argsort(-np.abs(lam)):
        v = V[:, int(k)]
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        v = v / nv
        # reducing: v must be an eigenvector of A* as well
        if np.linalg.norm(A.conj().T @ v - np.conj(lam[int(k)]) * v) > scale:
            continue
        basis = np.concatenate([v[:, None], np.eye(n, dtype=complex)], axis=1)
        Q, _ = np.linalg.qr(basis)
        comp = Q[:, 1:]
        B = comp.conj().T @ A @ comp
        if op_norm(B) <= abs(lam[int(k)]) + scale:
            return True, complex(lam[int(k)])
    return False, None


def check_implication(
    implication_id: str,
    mats,
    sign: str | None = None,
    *,
    tol: float | None = None,
    cache: QuantityCache | None = None,
) -> BoundReport:
    """Evaluate hypothesis and conclusion of one implication numerically.

    The ``holds`` flag is the truth of (hypothesis => conclusion), so a
    failed hypothesis never falsifies the report; the converse direction is
    never asserted. Equalities are compared to ``tol`` relative to
    max(1, magnitudes).
    """
    tol = IMPLICATION_TOL if tol is None else tol
    if cache is None:
        cache = QuantityCache(mats)
    mats = cache.mats
    q = cache
    details: dict = {}

    if implication_id == "C2.2":
        # r(|A||A*|) = 0  =>  w(A) = ||A||/2
        if len(mats) != 1:
            raise ValueError("C2.2 expects 1 matrix")
        sign = "n/a"
        rp = q.r_abs_product(0)
        hyp = rp <= tol * max(1.0, q.norm(0) ** 2)
        lhs, rhs = q.w(0), 0.5 * q.norm(0)
        concl = _close(lhs, rhs, tol)
        details["r_abs_product"] = float(rp)
    elif implication_id == "C2.4":
        # w(A) = (||A|| + ||A^2||^(1/2))/2  =>  r(|A||A*|) = ||A^2||
        if len(mats) != 1:
            raise ValueError("C2.4 expects 1 matrix")
        sign = "n/a"
        hyp = _close(q.w(0), 0.5 * (q.norm(0) + _root(q.norm_sq_mat(0))), tol)
        lhs, rhs = q.r_abs_product(0), q.norm_sq_mat(0)
        concl = _close(lhs, rhs, tol)
    elif implication_id == "C3.4":
        # w(AB +/- BA) = 2 sqrt(2) ||B|| w(A)  =>  c(Re A) = c(Im A) = 0
        if len(mats) != 2:
            raise ValueError("C3.4 expects 2 matrices")
        sign = "+" if sign is None else sign
        if sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-' for C3.4, got {sign!r}")
        sgn = 1 if sign == "+" else -1
        hyp = _close(q.w_comm(0, 1, sgn), _SQRT8 * q.norm(1) * q.w(0), tol)
        scale = max(1.0, q.norm(0))
        concl = q.c_re(0) <= tol * scale and q.c_im(0) <= tol * scale
        lhs, rhs = q.c_re(0), q.c_im(0)
        details["c_re"] = float(q.c_re(0))
        details["c_im"] = float(q.c_im(0))
    elif implication_id == "P2.5":
        # a reducing scalar block dominating the rest, or r(|A||A*|) = 0,
        # forces equality in the I-MAIN bound
        if len(mats) != 1:
            raise ValueError("P2.5 expects 1 matrix")
        sign = "n/a"
        rp = q.r_abs_product(0)
        hyp_ii = rp <= tol * max(1.0, q.norm(0) ** 2)
        hyp_i, alpha = (False, None) if hyp_ii else _scalar_block_certificate(q.mats[0], tol)
        hyp = hyp_i or hyp_ii
        lhs, rhs = q.w(0), 0.5 * (q.norm(0) + _root(rp))
        concl = _close(lhs, rhs, tol)
        details["condition_scalar_block"] = bool(hyp_i)
        details["condition_zero_product_radius"] = bool(hyp_ii)
        if alpha is not None:
            details["alpha"] = [alpha.real, alpha.imag]
    else:
        raise ValueError(
            f"unknown implication id {implication_id!r}; known: {', '.join(IMPLICATION_IDS)}"
        )

    details["hypothesis_holds"] = bool(hyp)
    details["conclusion_holds"] = bool(concl)
    lhs = float(lhs)
    rhs = float(rhs)
    return BoundReport(
        inequality_id=implication_id,
        sign=sign,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        holds=bool((not hyp) or concl),
        applicable=True,
        inputs_digest=matrix_digest(*mats),
        details=details,
    )
