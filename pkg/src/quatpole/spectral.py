"""Right spectra of quaternionic matrices.

A right eigenpair satisfies ``A v = v q`` for a nonzero column v; rescaling
v conjugates q, so only the similarity class of q is well defined.  The
class multiset is computed through the complex-adjoint embedding: the
eigenvalues of the 2n x 2n complex image close under conjugation, and each
conjugate pair collapses to one class occurrence.

The dense complex eigensolver is implemented in this package (Hessenberg
reduction plus Wilkinson-shifted QR with deflation, see `_kernels`), so
spectra are reproducible without relying on a platform LAPACK.
"""

from __future__ import annotations

import numpy as np

from . import _kernels, config
from .errors import EigenConvergenceError, PairingError, ShapeError
from .qmatrix import QMatrix
from .quaternion import SimilarityClass


# subdiagonals are never chopped above this relative size: deflating at the
# looser documented accuracy (1e-12) measurably splits repeated eigenvalues
# of quaternion embeddings (observed 1e-6 level), while machine-level
# deflation matches LAPACK to ~1e-12 on the same inputs
_DEFLATION_CAP = 4.0 * np.finfo(np.float64).eps


def complex_eigenvalues(z, tol=1e-12, max_iterations=None) -> np.ndarray:
    """All eigenvalues of a dense complex matrix, with multiplicity.

    Parameters
    ----------
    z : (n, n) array_like, complex
        Matrix to decompose.
    tol : float
        Requested relative accuracy.  Values below the machine-level cap
        tighten deflation further; looser values are capped (see
        `_DEFLATION_CAP`), so accuracy never degrades below machine level.
    max_iterations : int, optional
        QR-step cap; defaults to ``100 * n**2``.

    Returns
    -------
    ndarray of complex, sorted by (real, imag).

    Raises
    ------
    EigenConvergenceError
        If the iteration cap runs out before every eigenvalue deflates;
        the error carries the iteration count.
    """
    z = np.ascontiguousarray(np.asarray(z, dtype=np.complex128))
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {z.shape}")
    n = z.shape[0]
    cap = 100 * n * n if max_iterations is None else int(max_iterations)
    eff_tol = min(float(tol), _DEFLATION_CAP)
    w, unconverged, iters = _kernels.eigvals(z, eff_tol, cap)
    if unconverged:
        raise EigenConvergenceError(
            f"QR iteration stalled with a block of size {unconverged} "
            f"after {iters} iterations", iterations=iters)
    order = np.lexsort((w.imag, w.real))
    return w[order]


class Spectrum:
    """Multiset of right-eigenvalue similarity classes, kept sorted.

    Entries may be given as SimilarityClass, complex or real scalars.
    """

    __slots__ = ("_classes",)

    def __init__(self, classes):
        items = []
        for c in classes:
            if not isinstance(c, SimilarityClass):
                c = SimilarityClass.from_complex(c)
            items.append(c)
        items.sort(key=SimilarityClass.sort_key)
        self._classes = tuple(items)

    @property
    def classes(self):
        return self._classes

    def representatives(self):
        """Standard complex representatives, one per class occurrence."""
        return [c.standard_rep for c in self._classes]

    def __len__(self):
        return len(self._classes)

    def __iter__(self):
        return iter(self._classes)

    def grouped(self, tol=None):
        """Collapse nearly equal classes into (class, multiplicity) pairs."""
        tol = config.class_tol() if tol is None else tol
        groups = []
        for c in self._classes:
            if groups and groups[-1][0].distance(c) <= tol:
                groups[-1][1] += 1
            else:
                groups.append([c, 1])
        return [(c, m) for c, m in groups]

    def stable(self, margin=0.0) -> bool:
        if margin < 0.0:
            raise ValueError("margin must be nonnegative")
        return all(c.re < -margin for c in self._classes)

    def __str__(self):
        return "{" + ", ".join(
            str(c) if m == 1 else f"{c}x{m}" for c, m in self.grouped()) + "}"

    def __repr__(self):
        return f"Spectrum({list(self._classes)!r})"


def _pair_conjugates(evals, tol):
    """Collapse a conjugation-closed eigenvalue list to class keys."""
    m = len(evals)
    if m % 2:
        raise PairingError("odd eigenvalue count cannot pair")
    order = sorted(range(m), key=lambda i: (-evals[i].imag,
                                            evals[i].real))
    used = [False] * m
    classes = []
    for idx in order:
        if used[idx]:
            continue
        used[idx] = True
        want = evals[idx].conjugate()
        best = -1
        best_d = np.inf
        for j in range(m):
            if used[j]:
                continue
            d = abs(evals[j] - want)
            if d < best_d:
                best_d = d
                best = j
        if best < 0 or best_d > tol:
            raise PairingError(
                f"eigenvalue {evals[idx]:.6g} has no conjugate partner "
                f"within {tol:g} (closest gap {best_d:.3g})")
        used[best] = True
        other = evals[best]
        re = 0.5 * (evals[idx].real + other.real)
        im = 0.5 * (abs(evals[idx].imag) + abs(other.imag))
        classes.append(SimilarityClass(re, im))
    return classes


def right_spectrum(m: QMatrix) -> Spectrum:
    """Similarity classes of the right eigenvalues of a square matrix.

    Computed as the eigenvalues of the complex adjoint, which occur in
    conjugate pairs; each pair contributes a single class occurrence, so
    the result carries n classes for an n x n input.

    The conjugate-pairing tolerance is the configured absolute value for
    matrices up to unit scale and grows with the largest entry norm
    beyond that: eigenvalue errors scale with the matrix, so an absolute
    gate would reject large but healthy inputs.
    """
    if not m.is_square():
        raise ShapeError("right spectrum needs a square matrix")
    w = complex_eigenvalues(m.complex_adjoint())
    tol = config.pair_tol() * max(1.0, m.max_norm())
    return Spectrum(_pair_conjugates(list(w), tol))


def is_stable(m, margin=0.0) -> bool:
    """True when every right-eigenvalue class sits left of -margin."""
    spectrum = m if isinstance(m, Spectrum) else right_spectrum(m)
    return spectrum.stable(margin)


def match_residual(target: Spectrum, achieved: Spectrum) -> float:
    """Largest per-pair gap when both multisets are paired in sorted order."""
    if len(target) != len(achieved):
        return np.inf
    if len(target) == 0:
        return 0.0
    return max(a.distance(b) for a, b in zip(target.classes,
                                             achieved.classes))


def spectra_match(s1: Spectrum, s2: Spectrum, tol=None) -> bool:
    """Order-free multiset comparison of similarity classes.

    Representatives are paired greedily in lexicographic order (real part,
    then imaginary part); the spectra match when every pair lies within
    ``tol`` componentwise.
    """
    tol = config.match_tol() if tol is None else tol
    return match_residual(s1, s2) <= tol
