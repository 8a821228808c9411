import numpy as np
import pytest

import quatpole as qp
from quatpole.quaternion import I, J, K


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # first call may trigger kernel compilation; keep it out of timed tests
    m = qp.QMatrix.identity(2)
    _ = m @ m
    _ = qp.complex_eigenvalues(np.eye(3, dtype=complex))
    sys_ = qp.SystemHx(qp.QMatrix.identity(1) * -1.0, qp.QMatrix.column([1]))
    _ = qp.simulate_closed_loop(sys_, qp.QMatrix.zeros(1, 1), qp.QMatrix.column([1]),
                                dt=0.5, horizon=1.0)


@pytest.fixture
def demo_system():
    """Two-state single-input system used throughout the golden tests."""
    a = qp.QMatrix.from_nested([[1, I], [J, K]])
    b = qp.QMatrix.column([1, K])
    return qp.SystemHx(a, b, label="demo")


def random_qmatrix(rng, rows, cols, scale=1.0):
    return qp.QMatrix(rng.normal(0.0, scale, size=(rows, cols, 4)))


def random_unit_quaternion(rng):
    q = qp.random_quaternion(rng)
    while q.norm() < 1e-3:
        q = qp.random_quaternion(rng)
    return q / q.norm()


def random_invertible(rng, n, min_pivot=5e-2, tries=100):
    """Random square matrix with a comfortable pivot spread."""
    for _ in range(tries):
        m = random_qmatrix(rng, n, n)
        norms = m.pivot_norms()
        if len(norms) == n and min(norms) > min_pivot:
            return m
    raise RuntimeError("no well-conditioned matrix found")


def random_controllable(rng, n, min_pivot=5e-2, tries=100):
    """Well-scaled random controllable pair (||A|| near 1).

    Unit-scale entries would make companion coefficients and matrix
    powers blow up combinatorially with n, burying the absolute
    residual tolerances under float cancellation noise.
    """
    scale = 0.5 / np.sqrt(n)
    for _ in range(tries):
        sys_ = qp.SystemHx(random_qmatrix(rng, n, n, scale=scale),
                           random_qmatrix(rng, n, 1, scale=0.5))
        norms = qp.controllability_matrix(sys_).pivot_norms()
        if len(norms) == n and min(norms) > min_pivot:
            return sys_
    raise RuntimeError("no well-conditioned controllable pair found")


# clustered targets make the closed loop nearly defective and its spectrum
# disproportionately sensitive; keep random pole classes apart
_SEPARATION = 0.3


def _separated(key, keys):
    return all(max(abs(key[0] - k[0]), abs(key[1] - k[1])) >= _SEPARATION
               for k in keys)


def random_pole_classes(rng, n):
    """Stable, well-separated classes fitting exactly n degrees."""
    while True:
        classes = []
        keys = []
        budget = 0
        restart = False
        while budget < n:
            spherical = budget + 2 <= n and rng.random() < 0.5
            for _ in range(100):
                re = -rng.uniform(0.5, 3.0)
                im = rng.uniform(0.5, 2.0) if spherical else 0.0
                if _separated((re, im), keys):
                    break
            else:
                restart = True
                break
            keys.append((re, im))
            classes.append(complex(re, im))
            budget += 2 if spherical else 1
        if not restart:
            return classes


def random_distinct_roots(rng, n, stable=True):
    """Quaternion roots in n pairwise well-separated classes."""
    roots = []
    keys = []
    while len(roots) < n:
        re = -rng.uniform(0.5, 3.0) if stable else rng.normal()
        q = qp.Quaternion(re, *rng.normal(0.0, 1.0, size=3))
        key = (q.re, q.im_norm())
        if _separated(key, keys):
            keys.append(key)
            roots.append(q)
    return roots
