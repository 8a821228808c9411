"""State-feedback pole placement for single-input quaternionic systems.

The workflow mirrors the classical one, with the quaternionic twists made
explicit:

1. build the controllability matrix ``C = [B, AB, ..., A^(n-1)B]``;
2. transform the pair to lower controllable companion form by a similarity
   constructed directly from ``C`` (no determinants, no characteristic
   polynomial), and read the monic companion polynomial off the last row;
3. place poles either by updating companion coefficients (valid for any
   monic quaternionic target) or by the one-shot Ackermann-style gain
   ``K = e_n^T C^-1 a_d(A)`` (valid only for real target coefficients);
4. verify by recomputing the closed-loop right spectrum from scratch.

Poles are right-eigenvalue similarity classes, not points.  A real target
coefficient vector can prescribe real classes and spherical classes from
conjugate pairs; prescribing arbitrary quaternion points requires the
coefficient-matching route.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import config
from .errors import (DegreeError, NonRealCoefficientError, ShapeError,
                     SingularMatrixError, UncontrollableError)
from .qmatrix import QMatrix
from .qpoly import QPoly
from .quaternion import Quaternion
from .spectral import Spectrum, match_residual, right_spectrum

# pivot ratio below which a controllability matrix earns a conditioning
# warning in the design report
_NEAR_SINGULAR_RATIO = 1e-8


@dataclass(frozen=True)
class SystemHx:
    """Single-input continuous-time model ``xdot = A x + B u`` over H."""

    A: QMatrix
    B: QMatrix
    label: str | None = None

    def __post_init__(self):
        if not self.A.is_square():
            raise ShapeError(f"A must be square, got {self.A.shape}")
        if self.B.cols != 1 or self.B.rows != self.A.rows:
            raise ShapeError(
                f"B must be a {self.A.rows}x1 column, got {self.B.shape}")

    @property
    def order(self) -> int:
        return self.A.rows

    def closed_loop(self, gain: QMatrix) -> QMatrix:
        """A - B K for a 1 x n gain row."""
        if gain.shape != (1, self.order):
            raise ShapeError(
                f"gain must be 1x{self.order}, got {gain.shape}")
        return self.A - self.B @ gain


@dataclass(frozen=True)
class CompanionTransform:
    """Similarity taking a controllable pair to companion coordinates.

    ``A_c = T_inv @ A @ T`` has a unit superdiagonal and carries the
    negated companion-polynomial coefficients in its last row;
    ``B_c = T_inv @ B`` is the last canonical basis vector.  ``t_row`` is
    the last row of the controllability inverse, from which ``T_inv``
    stacks ``t, tA, ..., tA^(n-1)``.
    """

    t_row: QMatrix
    T: QMatrix
    T_inv: QMatrix
    A_c: QMatrix
    B_c: QMatrix
    poly: QPoly
    annihilation_residual: float


@dataclass(frozen=True)
class DesignReport:
    """Outcome of a gain computation or verification.

    The achieved spectrum is always recomputed from ``A - B K``; it is
    never copied from the request.  ``residual_placement`` is the largest
    componentwise gap between target and achieved class representatives
    under sorted pairing, and ``residual_annihilation`` is the max norm of
    the open-loop companion polynomial evaluated at its companion matrix
    (None when no transform was involved).
    """

    method: str
    K: QMatrix
    A_cl: QMatrix
    target: Spectrum
    achieved: Spectrum
    matched: bool
    stable: bool
    residual_placement: float
    residual_annihilation: float | None = None
    warnings: tuple[str, ...] = field(default=())


def controllability_matrix(sys: SystemHx) -> QMatrix:
    """``[B, AB, ..., A^(n-1)B]`` as an n x n quaternionic matrix."""
    cols = [sys.B]
    for _ in range(sys.order - 1):
        cols.append(sys.A @ cols[-1])
    return QMatrix.hstack(cols)


def is_controllable(sys: SystemHx) -> bool:
    """Full quaternionic rank of the controllability matrix."""
    return controllability_matrix(sys).rank() == sys.order


def companion_transform(sys: SystemHx) -> CompanionTransform:
    """Similarity to lower controllable companion form.

    The companion coefficients are the unique right-hand expansion
    coefficients of ``A^n B`` over the Krylov columns, obtained from a
    single quaternionic solve against the controllability matrix.  The
    whole construction is determinant-free and, for a fixed pair, unique.

    Raises
    ------
    UncontrollableError
        If the controllability matrix is singular to working precision.
    """
    n = sys.order
    ctrb = controllability_matrix(sys)
    try:
        ctrb_inv = ctrb.inverse()
    except SingularMatrixError as exc:
        raise UncontrollableError(
            f"pair is not controllable: controllability matrix has rank "
            f"{exc.estimated_rank} of {n}",
            rank=exc.estimated_rank, order=n) from exc
    last_krylov = ctrb.col(n - 1)
    rhs = -(sys.A @ last_krylov)
    coeff_col = ctrb.solve(rhs)
    coeffs = [coeff_col[k, 0] for k in range(n)] + [Quaternion(1.0)]
    poly = QPoly(coeffs)

    t_row = ctrb_inv.row_at(n - 1)
    rows = [t_row]
    for _ in range(n - 1):
        rows.append(rows[-1] @ sys.A)
    t_inv = QMatrix(np.concatenate([r.to_array() for r in rows], axis=0))
    t = t_inv.inverse()
    a_c = t_inv @ sys.A @ t
    b_c = t_inv @ sys.B
    residual = poly.eval_matrix(a_c).max_norm()
    return CompanionTransform(t_row=t_row, T=t, T_inv=t_inv, A_c=a_c,
                              B_c=b_c, poly=poly,
                              annihilation_residual=residual)


def _conditioning_warnings(ctrb: QMatrix) -> tuple[str, ...]:
    norms = ctrb.pivot_norms()
    if len(norms) == ctrb.rows and norms[0] > 0.0:
        ratio = min(norms) / max(norms)
        if ratio < _NEAR_SINGULAR_RATIO:
            return (f"controllability matrix is near singular "
                    f"(pivot ratio {ratio:.2e}); gains may be inaccurate",)
    return ()


def _validate_target(a_d: QPoly, n: int):
    if not a_d.is_monic():
        raise DegreeError("target polynomial must be monic")
    if a_d.degree != n:
        raise DegreeError(
            f"target polynomial has degree {a_d.degree}, system order is {n}")


def _assess(sys, gain, target, method, annihilation, warnings) -> DesignReport:
    a_cl = sys.closed_loop(gain)
    achieved = right_spectrum(a_cl)
    residual = match_residual(target, achieved)
    matched = bool(residual <= config.match_tol())
    return DesignReport(
        method=method,
        K=gain,
        A_cl=a_cl,
        target=target,
        achieved=achieved,
        matched=matched,
        stable=achieved.stable(),
        residual_placement=float(residual),
        residual_annihilation=annihilation,
        warnings=warnings,
    )


def place_matching(sys: SystemHx, a_d: QPoly) -> DesignReport:
    """Pole placement by coefficient matching in companion coordinates.

    Valid for any monic target of degree n, including targets with
    quaternionic coefficients.  The gain is ``K_c T_inv`` where ``K_c``
    holds the coefficient updates ``d_k - a_k``.

    Parameters
    ----------
    sys : SystemHx
        Controllable single-input pair.
    a_d : QPoly
        Monic target polynomial of degree equal to the system order.

    Returns
    -------
    DesignReport with the recomputed achieved spectrum.
    """
    n = sys.order
    _validate_target(a_d, n)
    ct = companion_transform(sys)
    warnings = _conditioning_warnings(controllability_matrix(sys))
    k_c = QMatrix.row([a_d.coeff(k) - ct.poly.coeff(k) for k in range(n)])
    gain = k_c @ ct.T_inv
    target = a_d.right_zero_classes()
    return _assess(sys, gain, target, "matching",
                   ct.annihilation_residual, warnings)


def place_ackermann(sys: SystemHx, a_d: QPoly,
                    allow_nonreal: bool = False) -> DesignReport:
    """One-shot gain ``K = e_n^T C^-1 a_d(A)``.

    Produces exactly the coefficient-matching gain whenever the target
    polynomial has real coefficients.  With nonreal coefficients the
    formula is not valid (real coefficients are what lets the polynomial
    slide through the similarity); by default such targets are rejected.
    Passing ``allow_nonreal=True`` computes the gain anyway so the failure
    is observable in the report's ``matched`` field.

    Raises
    ------
    NonRealCoefficientError
        If ``a_d`` has a nonreal coefficient and ``allow_nonreal`` is not
        set.
    UncontrollableError
        If the pair is not controllable.
    """
    n = sys.order
    _validate_target(a_d, n)
    if not a_d.is_real() and not allow_nonreal:
        raise NonRealCoefficientError(
            "Ackermann gain is valid only for real (central) target "
            "coefficients; pass allow_nonreal=True to compute it anyway "
            "and observe the mismatch")
    ctrb = controllability_matrix(sys)
    try:
        ctrb_inv = ctrb.inverse()
    except SingularMatrixError as exc:
        raise UncontrollableError(
            f"pair is not controllable: controllability matrix has rank "
            f"{exc.estimated_rank} of {n}",
            rank=exc.estimated_rank, order=n) from exc
    warnings = _conditioning_warnings(ctrb)
    gain = ctrb_inv.row_at(n - 1) @ a_d.eval_matrix(sys.A)
    target = a_d.right_zero_classes()
    annihilation = companion_transform(sys).annihilation_residual
    return _assess(sys, gain, target, "ackermann", annihilation, warnings)


def verify_placement(sys: SystemHx, gain: QMatrix,
                     targets: Spectrum) -> DesignReport:
    """Recompute the closed-loop right spectrum and compare to targets.

    Needs no controllability; it only forms ``A - B K`` and measures the
    achieved classes against the requested multiset.
    """
    return _assess(sys, gain, targets, "verify", None, ())


def intertwining_residual(p: QPoly, a: QMatrix, t: QMatrix) -> float:
    """Max-norm of ``p(A) T - T p(T^-1 A T)``.

    Zero (to roundoff) for every real-coefficient polynomial; with nonreal
    coefficients the identity generally fails because the coefficients no
    longer commute with the similarity.
    """
    if not a.is_square() or a.shape != t.shape:
        raise ShapeError("A and T must be square with equal shapes")
    a_sim = t.solve(a @ t)
    lhs = p.eval_matrix(a) @ t
    rhs = t @ p.eval_matrix(a_sim)
    return (lhs - rhs).max_norm()
