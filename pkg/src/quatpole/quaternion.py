"""Quaternion scalars and their similarity classes.

A quaternion ``q = w + x*i + y*j + z*k`` is stored as four double-precision
reals.  Multiplication follows the Hamilton convention ``i*j = k = -j*i``
and is noncommutative, so there is no quaternion/quaternion division
operator here: use ``q * r.inverse()`` or ``q.inverse() * r`` and say which
side you mean.

Conjugating ``q`` by any nonzero quaternion preserves its real part and the
magnitude of its imaginary part.  The orbit of ``q`` under conjugation is
its similarity class; the unique complex member with nonnegative imaginary
part is the class's standard representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

from . import _scalar, config


class Quaternion:
    """Immutable hypercomplex scalar with components (w, x, y, z)."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        object.__setattr__(self, "w", float(w))
        object.__setattr__(self, "x", float(x))
        object.__setattr__(self, "y", float(y))
        object.__setattr__(self, "z", float(z))

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    @classmethod
    def from_wxyz(cls, wxyz) -> "Quaternion":
        w, x, y, z = wxyz
        return cls(w, x, y, z)

    @classmethod
    def from_complex(cls, c) -> "Quaternion":
        """Embed a complex number on the standard complex line (j = k = 0)."""
        c = complex(c)
        return cls(c.real, c.imag, 0.0, 0.0)

    @staticmethod
    def _coerce(value):
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (int, float)):
            return Quaternion(value)
        if isinstance(value, complex):
            return Quaternion.from_complex(value)
        return None

    # -- container views ------------------------------------------------

    @property
    def wxyz(self):
        return (self.w, self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.wxyz)

    # -- algebra ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion.from_wxyz(_scalar.qadd(self.wxyz, other.wxyz))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion.from_wxyz(_scalar.qsub(self.wxyz, other.wxyz))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion.from_wxyz(_scalar.qsub(other.wxyz, self.wxyz))

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        """Hamilton product, self on the left."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion.from_wxyz(_scalar.qmul(self.wxyz, other.wxyz))

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion.from_wxyz(_scalar.qmul(other.wxyz, self.wxyz))

    def __truediv__(self, other):
        # real divisor only; quaternion division is side-ambiguous
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    conj = conjugate

    def norm_sq(self) -> float:
        return _scalar.qnorm_sq(self.wxyz)

    def norm(self) -> float:
        return sqrt(self.norm_sq())

    __abs__ = norm

    def inverse(self) -> "Quaternion":
        """Two-sided inverse; raises ZeroDivisionError at zero."""
        return Quaternion.from_wxyz(_scalar.qinv(self.wxyz))

    # -- structure --------------------------------------------------------

    @property
    def re(self) -> float:
        return self.w

    def im_norm(self) -> float:
        """Magnitude of the imaginary part x*i + y*j + z*k."""
        return sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def is_real(self, tol=0.0) -> bool:
        return self.im_norm() <= tol

    def standard_rep(self) -> complex:
        """Complex representative of this quaternion's similarity class."""
        return complex(self.w, self.im_norm())

    def similarity_class(self) -> "SimilarityClass":
        return SimilarityClass(self.w, self.im_norm())

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.wxyz == other.wxyz

    def __hash__(self):
        return hash(self.wxyz)

    def isclose(self, other, tol=1e-12) -> bool:
        other = self._coerce(other)
        return _scalar.qnorm(_scalar.qsub(self.wxyz, other.wxyz)) <= tol

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    def __str__(self):
        return format_quaternion(self)


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def format_quaternion(q, digits=None) -> str:
    """Render like ``1-2i+0.5k``, dropping zero components."""
    parts = []
    for value, unit in zip(q.wxyz, ("", "i", "j", "k")):
        if digits is not None:
            value = round(value, digits)
        if value == 0.0:
            continue
        mag = abs(value)
        text = f"{mag:g}"
        if unit and mag == 1.0:
            text = ""
        sign = "-" if value < 0.0 else ("+" if parts else "")
        parts.append(f"{sign}{text}{unit}")
    return "".join(parts) if parts else "0"


@dataclass(frozen=True)
class SimilarityClass:
    """A conjugation orbit in H, keyed by (real part, |imaginary part|).

    Real quaternions form singleton classes; any nonreal class is a 2-sphere
    that meets the standard complex line at ``re +/- i*im_norm``.
    """

    re: float
    im_norm: float

    def __post_init__(self):
        if self.im_norm < 0.0:
            raise ValueError("im_norm must be nonnegative")
        object.__setattr__(self, "re", float(self.re))
        object.__setattr__(self, "im_norm", float(self.im_norm))

    @classmethod
    def of(cls, q) -> "SimilarityClass":
        q = Quaternion._coerce(q)
        return cls(q.w, q.im_norm())

    @classmethod
    def from_complex(cls, c) -> "SimilarityClass":
        c = complex(c)
        return cls(c.real, abs(c.imag))

    @property
    def standard_rep(self) -> complex:
        return complex(self.re, self.im_norm)

    def is_real(self, tol=0.0) -> bool:
        return self.im_norm <= tol

    def distance(self, other) -> float:
        """Componentwise distance between class keys (max of both gaps)."""
        return max(abs(self.re - other.re), abs(self.im_norm - other.im_norm))

    def matches(self, other, tol=None) -> bool:
        tol = config.class_tol() if tol is None else tol
        return self.distance(other) <= tol

    def contains(self, q, tol=None) -> bool:
        """Membership test; invariant under conjugation of ``q``."""
        return self.matches(SimilarityClass.of(q), tol)

    def sort_key(self):
        return (self.re, self.im_norm)

    def __str__(self):
        rep = self.standard_rep
        if self.im_norm == 0.0:
            return f"[{rep.real:g}]"
        return f"[{rep.real:g}{rep.imag:+g}i]"


def similar(q, r, tol=None) -> bool:
    """True when q and r lie in the same similarity class.

    Equivalent to the existence of a nonzero a with ``a.inverse()*q*a == r``;
    tested through the conjugation invariants (real part, |imaginary part|).
    """
    tol = config.class_tol() if tol is None else tol
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    q = Quaternion._coerce(q)
    r = Quaternion._coerce(r)
    return (abs(q.re - r.re) <= tol
            and abs(q.im_norm() - r.im_norm()) <= tol)


def standard_rep(q) -> complex:
    """Standard complex representative of the class of q (Im >= 0)."""
    return Quaternion._coerce(q).standard_rep()


def random_quaternion(rng, scale=1.0) -> Quaternion:
    """Gaussian quaternion, handy for randomized checks."""
    return Quaternion.from_wxyz(rng.normal(0.0, scale, size=4))
