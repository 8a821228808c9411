"""Dense quaternionic matrices.

Entries live in a float64 array of shape (rows, cols, 4); columns form a
right module, so linear combinations of columns take their coefficients on
the right.  Row operations are left multiplications and therefore preserve
right-linear column relations, which is why elimination below works the
same way it does over a field.  Two conventions are fixed package-wide:

* products associate left to right: ``(M @ N)[i, j] = sum_k M[i,k]*N[k,j]``;
* during elimination the pivot's inverse is applied from the left.

Plain entrywise transpose does not distribute over products here (only the
conjugate transpose does), so ``.T`` exists but is rarely what you want.
"""

from __future__ import annotations

import numpy as np

from . import _kernels, config
from ._scalar import ONE as _ONE
from ._scalar import ZERO as _ZERO
from ._scalar import qinv, qmul, qnorm, qsub
from .errors import ShapeError, SingularMatrixError
from .quaternion import Quaternion, format_quaternion


def _as_entry_array(data):
    if isinstance(data, QMatrix):
        return data._a.copy()
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim == 2:
        # a real matrix: embed on the real axis
        out = np.zeros(arr.shape + (4,))
        out[..., 0] = arr
        return out
    if arr.ndim != 3 or arr.shape[-1] != 4:
        raise ShapeError(
            f"expected (rows, cols, 4) entry array, got shape {arr.shape}")
    return arr.copy()


class QMatrix:
    """m x n matrix over the quaternions."""

    __slots__ = ("_a",)

    def __init__(self, data):
        arr = _as_entry_array(data)
        self._a = np.ascontiguousarray(arr, dtype=np.float64)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows, cols) -> "QMatrix":
        return cls(np.zeros((rows, cols, 4)))

    @classmethod
    def identity(cls, n) -> "QMatrix":
        a = np.zeros((n, n, 4))
        a[np.arange(n), np.arange(n), 0] = 1.0
        return cls(a)

    @classmethod
    def from_nested(cls, nested) -> "QMatrix":
        """Build from rows of entries; entries are Quaternion or 4-sequences."""
        rows = []
        for row in nested:
            out_row = []
            for e in row:
                q = Quaternion._coerce(e)
                out_row.append(list(q.wxyz) if q is not None else list(e))
            rows.append(out_row)
        arr = np.asarray(rows, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[-1] != 4:
            raise ShapeError("rows must contain quaternion 4-sequences")
        return cls(arr)

    @classmethod
    def column(cls, entries) -> "QMatrix":
        return cls.from_nested([[e] for e in entries])

    @classmethod
    def row(cls, entries) -> "QMatrix":
        return cls.from_nested([list(entries)])

    @classmethod
    def from_complex(cls, z) -> "QMatrix":
        """Embed a complex matrix on the standard complex line."""
        z = np.asarray(z, dtype=np.complex128)
        a = np.zeros(z.shape + (4,))
        a[..., 0] = z.real
        a[..., 1] = z.imag
        return cls(a)

    @classmethod
    def hstack(cls, blocks) -> "QMatrix":
        return cls(np.concatenate([b._a for b in blocks], axis=1))

    # -- shape and access --------------------------------------------------

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape[:2]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key) -> Quaternion:
        i, j = key
        return Quaternion.from_wxyz(self._a[i, j])

    def col(self, j) -> "QMatrix":
        return QMatrix(self._a[:, j:j + 1, :])

    def row_at(self, i) -> "QMatrix":
        return QMatrix(self._a[i:i + 1, :, :])

    def to_array(self) -> np.ndarray:
        """Copy of the underlying (rows, cols, 4) component array."""
        return self._a.copy()

    def to_nested(self):
        return self._a.tolist()

    # -- algebra ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return QMatrix(self._a + other._a)

    def __sub__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return QMatrix(self._a - other._a)

    def __neg__(self):
        return QMatrix(-self._a)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float)):
            return QMatrix(self._a * float(scalar))
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(
                f"inner dimensions disagree: {self.shape} @ {other.shape}")
        return QMatrix(_kernels.quat_matmul(self._a, other._a))

    def scale_left(self, q) -> "QMatrix":
        """Entrywise left multiplication q * M[i, j]."""
        q = Quaternion._coerce(q)
        out = np.empty_like(self._a)
        w, x, y, z = (self._a[..., 0], self._a[..., 1],
                      self._a[..., 2], self._a[..., 3])
        out[..., 0] = q.w * w - q.x * x - q.y * y - q.z * z
        out[..., 1] = q.w * x + q.x * w + q.y * z - q.z * y
        out[..., 2] = q.w * y - q.x * z + q.y * w + q.z * x
        out[..., 3] = q.w * z + q.x * y - q.y * x + q.z * w
        return QMatrix(out)

    def scale_right(self, q) -> "QMatrix":
        """Entrywise right multiplication M[i, j] * q."""
        q = Quaternion._coerce(q)
        out = np.empty_like(self._a)
        w, x, y, z = (self._a[..., 0], self._a[..., 1],
                      self._a[..., 2], self._a[..., 3])
        out[..., 0] = w * q.w - x * q.x - y * q.y - z * q.z
        out[..., 1] = w * q.x + x * q.w + y * q.z - z * q.y
        out[..., 2] = w * q.y - x * q.z + y * q.w + z * q.x
        out[..., 3] = w * q.z + x * q.y - y * q.x + z * q.w
        return QMatrix(out)

    @property
    def T(self) -> "QMatrix":
        """Entrywise transpose without conjugation; see module notes."""
        return QMatrix(self._a.transpose(1, 0, 2))

    @property
    def H(self) -> "QMatrix":
        """Conjugate transpose; distributes over products as (MN)* = N*M*."""
        out = self._a.transpose(1, 0, 2).copy()
        out[..., 1:] *= -1.0
        return QMatrix(out)

    def conjugate(self) -> "QMatrix":
        out = self._a.copy()
        out[..., 1:] *= -1.0
        return QMatrix(out)

    # -- norms and comparison -----------------------------------------------

    def entry_norms(self) -> np.ndarray:
        return np.sqrt((self._a ** 2).sum(axis=-1))

    def max_norm(self) -> float:
        """Largest entry norm; the package-wide residual norm."""
        if self._a.size == 0:
            return 0.0
        return float(self.entry_norms().max())

    def fro_norm(self) -> float:
        return float(np.sqrt((self._a ** 2).sum()))

    def allclose(self, other, tol=1e-12) -> bool:
        if self.shape != other.shape:
            return False
        return (self - other).max_norm() <= tol

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(
            np.array_equal(self._a, other._a))

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    # -- elimination: solve, inverse, rank -----------------------------------

    def _pivot_threshold(self, pivot_rtol):
        rtol = config.pivot_rtol() if pivot_rtol is None else pivot_rtol
        return rtol * self.max_norm()

    def solve(self, rhs, pivot_rtol=None) -> "QMatrix":
        """X with self @ X = rhs, by Gauss-Jordan elimination.

        Pivoting picks the largest entry norm in the working column; the
        pivot row is normalized by left multiplication with the pivot's
        inverse.  Raises SingularMatrixError (carrying the estimated rank)
        when no pivot clears the threshold.
        """
        if not self.is_square():
            raise ShapeError("solve needs a square matrix")
        if not isinstance(rhs, QMatrix):
            rhs = QMatrix(rhs)
        if rhs.rows != self.rows:
            raise ShapeError(
                f"right-hand side has {rhs.rows} rows, expected {self.rows}")
        n = self.rows
        threshold = self._pivot_threshold(pivot_rtol)
        aug = [mr + yr for mr, yr in
               zip(self._a.tolist(), rhs._a.tolist())]
        for col in range(n):
            best = -1
            best_norm = threshold
            for r in range(col, n):
                nn = qnorm(aug[r][col])
                if nn > best_norm:
                    best = r
                    best_norm = nn
            if best < 0:
                rank, _ = self._rank_internal(pivot_rtol)
                raise SingularMatrixError(
                    f"matrix is singular to working precision "
                    f"(estimated rank {rank} of {n})", estimated_rank=rank)
            aug[col], aug[best] = aug[best], aug[col]
            pinv = qinv(aug[col][col])
            aug[col] = [qmul(pinv, e) for e in aug[col]]
            aug[col][col] = _ONE
            prow = aug[col]
            for r in range(n):
                if r == col:
                    continue
                f = aug[r][col]
                if f[0] or f[1] or f[2] or f[3]:
                    aug[r] = [qsub(e, qmul(f, p))
                              for e, p in zip(aug[r], prow)]
                    aug[r][col] = _ZERO
        x = np.asarray([row[n:] for row in aug], dtype=np.float64)
        return QMatrix(x)

    def inverse(self, pivot_rtol=None) -> "QMatrix":
        """Two-sided inverse of a square full-rank matrix."""
        return self.solve(QMatrix.identity(self.rows), pivot_rtol)

    def _rank_internal(self, pivot_rtol=None):
        threshold = self._pivot_threshold(pivot_rtol)
        rows = self._a.tolist()
        m = len(rows)
        ncols = self.cols
        pivot_norms = []
        r0 = 0
        for col in range(ncols):
            if r0 == m:
                break
            best = -1
            best_norm = threshold
            for r in range(r0, m):
                nn = qnorm(rows[r][col])
                if nn > best_norm:
                    best = r
                    best_norm = nn
            if best < 0:
                continue
            rows[r0], rows[best] = rows[best], rows[r0]
            pivot_norms.append(best_norm)
            pinv = qinv(rows[r0][col])
            rows[r0] = [qmul(pinv, e) for e in rows[r0]]
            prow = rows[r0]
            for r in range(r0 + 1, m):
                f = rows[r][col]
                if f[0] or f[1] or f[2] or f[3]:
                    rows[r] = [qsub(e, qmul(f, p))
                               for e, p in zip(rows[r], prow)]
            r0 += 1
        return len(pivot_norms), pivot_norms

    def rank(self, pivot_rtol=None) -> int:
        """Quaternionic rank: maximal number of right-independent columns."""
        rank, _ = self._rank_internal(pivot_rtol)
        return rank

    def pivot_norms(self, pivot_rtol=None):
        """Pivot magnitudes met during elimination; a cheap conditioning clue."""
        _, norms = self._rank_internal(pivot_rtol)
        return norms

    # -- complex adjoint embedding -------------------------------------------

    def complex_adjoint(self) -> np.ndarray:
        """The 2m x 2n complex image of this matrix.

        Each entry q = z1 + z2*j maps to the block [[z1, z2],
        [-conj(z2), conj(z1)]].  The map is a ring homomorphism and sends
        the conjugate transpose to the complex conjugate transpose, which
        makes it the package's spectral oracle.
        """
        z1 = self._a[..., 0] + 1j * self._a[..., 1]
        z2 = self._a[..., 2] + 1j * self._a[..., 3]
        out = np.empty((2 * self.rows, 2 * self.cols), dtype=np.complex128)
        out[0::2, 0::2] = z1
        out[0::2, 1::2] = z2
        out[1::2, 0::2] = -z2.conjugate()
        out[1::2, 1::2] = z1.conjugate()
        return out

    @classmethod
    def from_complex_adjoint(cls, z) -> "QMatrix":
        """Inverse of `complex_adjoint`, reading the top block row."""
        z = np.asarray(z, dtype=np.complex128)
        if z.ndim != 2 or z.shape[0] % 2 or z.shape[1] % 2:
            raise ShapeError("expected a 2m x 2n complex matrix")
        z1 = z[0::2, 0::2]
        z2 = z[0::2, 1::2]
        a = np.stack([z1.real, z1.imag, z2.real, z2.imag], axis=-1)
        return cls(a)

    @staticmethod
    def complex_rank(z, pivot_rtol=None) -> int:
        """Rank of a complex matrix, via the same elimination code."""
        return QMatrix.from_complex(z).rank(pivot_rtol)

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"

    def __str__(self):
        rows = []
        for i in range(self.rows):
            rows.append("  ".join(
                format_quaternion(self[i, j]).rjust(12)
                for j in range(self.cols)))
        return "\n".join(rows)
