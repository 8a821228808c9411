"""Quaternionic polynomials.

The indeterminate commutes with the coefficients, but evaluation at a
quaternion point does not: this module keeps the two evaluations apart as
`eval_right` (coefficients on the left of the powers) and `eval_left`
(powers on the left).  They agree exactly when every coefficient is real.

Matrix evaluation fixes one convention package-wide: scalar coefficients
multiply matrix powers from the left, ``sum_k p_k * M**k``.  No
right-coefficient matrix evaluation is offered.
"""

from __future__ import annotations

import numpy as np

from . import config
from .errors import DegreeError, DuplicateClassError, ShapeError
from .qmatrix import QMatrix
from .quaternion import Quaternion, SimilarityClass, format_quaternion, similar

_ZERO_Q = Quaternion()


def _coerce_coeff(value):
    q = Quaternion._coerce(value)
    if q is None:
        q = Quaternion.from_wxyz(value)
    return q


class QPoly:
    """Polynomial with quaternion coefficients, stored ascending by power."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        items = [_coerce_coeff(c) for c in coeffs]
        while len(items) > 1 and items[-1] == _ZERO_Q:
            items.pop()
        if not items:
            items = [_ZERO_Q]
        self._coeffs = tuple(items)

    # -- structure -----------------------------------------------------------

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coeff(self, k) -> Quaternion:
        return self._coeffs[k] if k <= self.degree else _ZERO_Q

    def is_monic(self, tol=1e-12) -> bool:
        lead = self._coeffs[-1]
        return lead.isclose(Quaternion(1.0), tol)

    def is_real(self, tol=0.0) -> bool:
        return all(c.im_norm() <= tol for c in self._coeffs)

    def real_coeffs(self):
        """Real parts of the coefficients; only meaningful when is_real()."""
        return [c.w for c in self._coeffs]

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def allclose(self, other, tol=1e-12) -> bool:
        n = max(self.degree, other.degree)
        return all((self.coeff(k) - other.coeff(k)).norm() <= tol
                   for k in range(n + 1))

    # -- evaluation ------------------------------------------------------------

    def eval_right(self, q) -> Quaternion:
        """Right value sum_k p_k * q**k (coefficients on the left)."""
        q = _coerce_coeff(q)
        acc = self._coeffs[-1]
        for c in reversed(self._coeffs[:-1]):
            acc = acc * q + c
        return acc

    def eval_left(self, q) -> Quaternion:
        """Left value sum_k q**k * p_k (powers on the left)."""
        q = _coerce_coeff(q)
        acc = self._coeffs[-1]
        for c in reversed(self._coeffs[:-1]):
            acc = q * acc + c
        return acc

    def eval_matrix(self, m: QMatrix) -> QMatrix:
        """sum_k p_k * M**k with scalar coefficients on the left."""
        if not m.is_square():
            raise ShapeError("matrix evaluation needs a square matrix")
        eye = QMatrix.identity(m.rows)
        acc = eye.scale_left(self._coeffs[-1])
        for c in reversed(self._coeffs[:-1]):
            acc = acc @ m + eye.scale_left(c)
        return acc

    # -- construction -----------------------------------------------------------

    @classmethod
    def from_real(cls, coeffs) -> "QPoly":
        return cls([Quaternion(float(c)) for c in coeffs])

    @classmethod
    def from_real_poles(cls, classes, degree=None) -> "QPoly":
        """Monic real-coefficient polynomial with the given pole classes.

        Real classes contribute a linear factor; each nonreal class
        contributes the real quadratic with that conjugate pair of complex
        roots, so it consumes two degrees.  When ``degree`` is given the
        combined budget must match it exactly.
        """
        poly = np.array([1.0])
        budget = 0
        for c in classes:
            if not isinstance(c, SimilarityClass):
                c = SimilarityClass.from_complex(c)
            if c.is_real():
                factor = np.array([-c.re, 1.0])
                budget += 1
            else:
                factor = np.array([c.re ** 2 + c.im_norm ** 2,
                                   -2.0 * c.re, 1.0])
                budget += 2
            poly = np.convolve(poly, factor)
        if degree is not None and budget != degree:
            raise DegreeError(
                f"pole classes consume degree {budget}, need {degree}")
        return cls.from_real(poly)

    @classmethod
    def from_right_zeros(cls, roots, class_tol=None) -> "QPoly":
        """Monic polynomial whose right zeros include every given root.

        Roots are absorbed left to right: if p has the roots so far and q
        is next with v = p(q) evaluated on the right, then (lambda - v q
        v^-1) * p keeps the old roots and gains q.  For pairwise
        non-similar roots the result is the unique monic polynomial with
        those zeros, so the absorption order does not matter.

        Similar-but-distinct roots would silently ask for a whole 2-sphere
        of zeros, so they are rejected; exact repetitions are allowed and
        add a repeated left factor.
        """
        ctol = config.class_tol() if class_tol is None else class_tol
        items = [_coerce_coeff(r) for r in roots]
        if not items:
            raise DegreeError("at least one root is required")
        for a in range(len(items)):
            for b in range(a + 1, len(items)):
                if items[a] == items[b]:
                    continue
                if similar(items[a], items[b], ctol):
                    raise DuplicateClassError(
                        f"roots {items[a]} and {items[b]} share a similarity "
                        "class but are not equal; their common class is a "
                        "2-sphere and the zero set would be infinite")
        poly = cls([-items[0], Quaternion(1.0)])
        processed = [items[0]]
        for q in items[1:]:
            if any(q == seen for seen in processed):
                poly = poly._mul_linear_left(q)
            else:
                v = poly.eval_right(q)
                if v.norm() <= 1e-12:
                    raise DuplicateClassError(
                        f"root {q} is already a right zero of the partial "
                        "product; cannot adjust it")
                adjusted = v * q * v.inverse()
                poly = poly._mul_linear_left(adjusted)
            processed.append(q)
        return poly

    def _mul_linear_left(self, q) -> "QPoly":
        """(lambda - q) * self."""
        q = _coerce_coeff(q)
        old = self._coeffs
        out = []
        for k in range(len(old) + 1):
            term = old[k - 1] if k >= 1 else _ZERO_Q
            if k < len(old):
                term = term - q * old[k]
            out.append(term)
        return QPoly(out)

    # -- zeros ---------------------------------------------------------------------

    def companion_matrix(self) -> QMatrix:
        """Lower companion form: unit superdiagonal, negated coefficients last."""
        if not self.is_monic():
            raise DegreeError("companion form requires a monic polynomial")
        n = self.degree
        if n < 1:
            raise DegreeError("companion form requires degree >= 1")
        arr = np.zeros((n, n, 4))
        for i in range(n - 1):
            arr[i, i + 1, 0] = 1.0
        for k in range(n):
            arr[n - 1, k] = [-v for v in self._coeffs[k].wxyz]
        return QMatrix(arr)

    def right_zero_classes(self):
        """Similarity classes of the right zeros, with multiplicity.

        Computed as the right spectrum of the companion matrix; a spherical
        zero shows up once per multiplicity through its class.
        """
        from .spectral import right_spectrum

        return right_spectrum(self.companion_matrix())

    # -- display --------------------------------------------------------------------

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c == _ZERO_Q and self.degree > 0:
                continue
            if k == 0:
                coeff_txt = format_quaternion(c)
                if "+" in coeff_txt[1:] or "-" in coeff_txt[1:]:
                    coeff_txt = f"({coeff_txt})"
                terms.append(coeff_txt)
                continue
            power = "L" if k == 1 else f"L^{k}"
            if c == Quaternion(1.0):
                terms.append(power)
            else:
                terms.append(f"({format_quaternion(c)}){power}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"QPoly({[format_quaternion(c) for c in self._coeffs]})"
