"""Pure-numpy implementations of the hot kernels.

Quaternion matrices travel as float64 arrays of shape (m, n, 4) with the
last axis holding (w, x, y, z).  The eigensolver works on complex128
square matrices: Hessenberg reduction by Householder reflections, then
explicitly shifted QR sweeps with Givens rotations and deflation.
"""

import math

import numpy as np

NAME = "numpy"


def quat_matmul(a, b):
    """Hamilton-product matrix multiply, (m,k,4) x (k,n,4) -> (m,n,4)."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    out = np.empty((a.shape[0], b.shape[1], 4))
    out[..., 0] = aw @ bw - ax @ bx - ay @ by - az @ bz
    out[..., 1] = aw @ bx + ax @ bw + ay @ bz - az @ by
    out[..., 2] = aw @ by - ax @ bz + ay @ bw + az @ bx
    out[..., 3] = aw @ bz + ax @ by - ay @ bx + az @ bw
    return out


def quat_matvec(a, x):
    """(n,n,4) x (n,4) -> (n,4)."""
    return quat_matmul(a, x[:, None, :])[:, 0, :]


def _balance(h):
    # Osborne balancing with radix-2 scale factors (exact similarities);
    # badly scaled rows and columns otherwise cost many digits in QR
    n = h.shape[0]
    radix = 2.0
    done = False
    while not done:
        done = True
        for i in range(n):
            c = float(np.abs(h[:, i]).sum()) - abs(h[i, i])
            r = float(np.abs(h[i, :]).sum()) - abs(h[i, i])
            if c == 0.0 or r == 0.0:
                continue
            f = 1.0
            s = c + r
            while c < r / radix:
                c *= radix
                r /= radix
                f *= radix
            while c >= r * radix:
                c /= radix
                r *= radix
                f /= radix
            if (c + r) < 0.95 * s:
                done = False
                h[:, i] *= f
                h[i, :] /= f
    return h


def _hessenberg(a):
    h = np.array(a, dtype=np.complex128, copy=True)
    n = h.shape[0]
    for k in range(n - 2):
        col = h[k + 1:, k]
        xnorm = math.sqrt(float((col.real ** 2 + col.imag ** 2).sum()))
        if xnorm == 0.0:
            continue
        x0 = col[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0 + 0j
        alpha = -phase * xnorm
        v = col.copy()
        v[0] -= alpha
        vnorm = math.sqrt(float((v.real ** 2 + v.imag ** 2).sum()))
        if vnorm == 0.0:
            continue
        u = v / vnorm
        h[k + 1:, k:] -= 2.0 * np.outer(u, u.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ u, u.conj())
        h[k + 2:, k] = 0.0
    return h


def _givens(a, b):
    # rotation [[c, s], [-conj(s), c]] zeroing b against a; c is real
    if b == 0:
        return 1.0, 0j
    if a == 0:
        return 0.0, b.conjugate() / abs(b)
    absa = abs(a)
    r = math.hypot(absa, abs(b))
    return absa / r, (a / absa) * b.conjugate() / r


def _eig2(a, b, c, d):
    # eigenvalues of [[a, b], [c, d]], the larger-magnitude root first
    m = 0.5 * (a + d)
    det = a * d - b * c
    disc = np.sqrt(m * m - det)
    e1 = m + disc if abs(m + disc) >= abs(m - disc) else m - disc
    e2 = det / e1 if e1 != 0 else 0j
    return e1, e2


def _subdiag_small(h, r, tol, hnorm):
    thr = tol * (abs(h[r - 1, r - 1]) + abs(h[r, r]))
    if thr == 0.0:
        thr = tol * hnorm
    return abs(h[r, r - 1]) <= thr


def _qr_step(h, lo, hi, mu):
    # rotations run over full rows and columns: confining them to the
    # active window leaves the coupling blocks stale, and a marginal
    # window boundary that later fails its smallness test would then mix
    # stale entries back in (observed as 1e-7 eigenvalue errors)
    n = h.shape[0]
    nb = hi - lo
    cs = np.empty(nb)
    ss = np.empty(nb, dtype=np.complex128)
    for t in range(lo, hi + 1):
        h[t, t] -= mu
    for idx, i in enumerate(range(lo, hi)):
        c, s = _givens(h[i, i], h[i + 1, i])
        cs[idx] = c
        ss[idx] = s
        row1 = h[i, i:n].copy()
        row2 = h[i + 1, i:n].copy()
        h[i, i:n] = c * row1 + s * row2
        h[i + 1, i:n] = -s.conjugate() * row1 + c * row2
    for idx, i in enumerate(range(lo, hi)):
        c = cs[idx]
        s = ss[idx]
        r2 = min(i + 1, hi)
        col1 = h[0:r2 + 1, i].copy()
        col2 = h[0:r2 + 1, i + 1].copy()
        h[0:r2 + 1, i] = col1 * c + col2 * s.conjugate()
        h[0:r2 + 1, i + 1] = -col1 * s + col2 * c
    for t in range(lo, hi + 1):
        h[t, t] += mu


def eigvals(a, tol, itmax):
    """All eigenvalues of a dense complex matrix.

    Returns (w, unconverged, iterations); unconverged is 0 on success and
    the size of the stuck leading block when the iteration cap is hit.
    """
    n = a.shape[0]
    w = np.zeros(n, dtype=np.complex128)
    if n == 0:
        return w, 0, 0
    h = _hessenberg(_balance(np.array(a, dtype=np.complex128, copy=True)))
    hnorm = float(np.abs(h).max())
    if hnorm == 0.0:
        return w, 0, 0
    hi = n - 1
    iters = 0
    stall = 0
    while hi >= 0:
        if hi == 0:
            w[0] = h[0, 0]
            hi = -1
            continue
        if _subdiag_small(h, hi, tol, hnorm):
            # deflate strictly one eigenvalue at a time; solving a noisy
            # 2x2 block analytically would square-root the error at the
            # doubled eigenvalues the quaternion embedding produces
            h[hi, hi - 1] = 0
            w[hi] = h[hi, hi]
            hi -= 1
            stall = 0
            continue
        if iters >= itmax:
            return w, hi + 1, iters
        lo = hi - 1
        while lo > 0 and not _subdiag_small(h, lo, tol, hnorm):
            lo -= 1
        if lo > 0:
            # commit the boundary so it cannot dissolve as diagonals move
            h[lo, lo - 1] = 0
        stall += 1
        if stall % 16 == 0:
            # exceptional shift to break symmetric stalls
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            e1, e2 = _eig2(h[hi - 1, hi - 1], h[hi - 1, hi],
                           h[hi, hi - 1], h[hi, hi])
            mu = e1 if abs(e1 - h[hi, hi]) <= abs(e2 - h[hi, hi]) else e2
        _qr_step(h, lo, hi, mu)
        iters += 1
    return w, 0, iters


def rk4_closed_loop(acl, x0, dt, nsteps):
    """Classical Runge-Kutta on xdot = acl*x over quaternion states.

    Returns (states, bad_step); states has shape (nsteps+1, n, 4) and
    bad_step is -1 when every state stayed finite, else the first step
    index that produced a non-finite value.
    """
    n = x0.shape[0]
    states = np.empty((nsteps + 1, n, 4))
    states[0] = x0
    x = np.array(x0, dtype=np.float64)
    half = 0.5 * dt
    sixth = dt / 6.0
    # overflow is detected through the finiteness check, not warnings
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(nsteps):
            k1 = quat_matvec(acl, x)
            k2 = quat_matvec(acl, x + half * k1)
            k3 = quat_matvec(acl, x + half * k2)
            k4 = quat_matvec(acl, x + dt * k3)
            x = x + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            states[step + 1] = x
            if not np.isfinite(x).all():
                return states, step + 1
    return states, -1
