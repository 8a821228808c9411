"""Numba-compiled twins of the numpy kernels.

Same contracts as `numpy_backend`; explicit loops instead of slice
arithmetic, compiled with cache=True so the cost is paid once per machine.
"""

import math

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def quat_matmul(a, b):
    m, kk = a.shape[0], a.shape[1]
    n = b.shape[1]
    out = np.empty((m, n, 4))
    for i in range(m):
        for j in range(n):
            w = 0.0
            x = 0.0
            y = 0.0
            z = 0.0
            for k in range(kk):
                aw = a[i, k, 0]
                ax = a[i, k, 1]
                ay = a[i, k, 2]
                az = a[i, k, 3]
                bw = b[k, j, 0]
                bx = b[k, j, 1]
                by = b[k, j, 2]
                bz = b[k, j, 3]
                w += aw * bw - ax * bx - ay * by - az * bz
                x += aw * bx + ax * bw + ay * bz - az * by
                y += aw * by - ax * bz + ay * bw + az * bx
                z += aw * bz + ax * by - ay * bx + az * bw
            out[i, j, 0] = w
            out[i, j, 1] = x
            out[i, j, 2] = y
            out[i, j, 3] = z
    return out


@njit(cache=True)
def quat_matvec(a, x):
    n = a.shape[0]
    kk = a.shape[1]
    out = np.empty((n, 4))
    for i in range(n):
        w = 0.0
        xx = 0.0
        y = 0.0
        z = 0.0
        for k in range(kk):
            aw = a[i, k, 0]
            ax = a[i, k, 1]
            ay = a[i, k, 2]
            az = a[i, k, 3]
            bw = x[k, 0]
            bx = x[k, 1]
            by = x[k, 2]
            bz = x[k, 3]
            w += aw * bw - ax * bx - ay * by - az * bz
            xx += aw * bx + ax * bw + ay * bz - az * by
            y += aw * by - ax * bz + ay * bw + az * bx
            z += aw * bz + ax * by - ay * bx + az * bw
        out[i, 0] = w
        out[i, 1] = xx
        out[i, 2] = y
        out[i, 3] = z
    return out


@njit(cache=True)
def _balance(h):
    # Osborne balancing with radix-2 scale factors (exact similarities);
    # badly scaled rows and columns otherwise cost many digits in QR
    n = h.shape[0]
    radix = 2.0
    done = False
    while not done:
        done = True
        for i in range(n):
            c = 0.0
            r = 0.0
            for j in range(n):
                if j != i:
                    c += abs(h[j, i])
                    r += abs(h[i, j])
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
                for j in range(n):
                    h[j, i] *= f
                    h[i, j] /= f
    return h


@njit(cache=True)
def _hessenberg(a):
    n = a.shape[0]
    h = a.copy()
    for k in range(n - 2):
        xn = 0.0
        for r in range(k + 1, n):
            xn += h[r, k].real ** 2 + h[r, k].imag ** 2
        xn = math.sqrt(xn)
        if xn == 0.0:
            continue
        x0 = h[k + 1, k]
        if x0 != 0:
            phase = x0 / abs(x0)
        else:
            phase = 1.0 + 0j
        alpha = -phase * xn
        m = n - k - 1
        u = np.empty(m, dtype=np.complex128)
        for t in range(m):
            u[t] = h[k + 1 + t, k]
        u[0] -= alpha
        un = 0.0
        for t in range(m):
            un += u[t].real ** 2 + u[t].imag ** 2
        un = math.sqrt(un)
        if un == 0.0:
            continue
        for t in range(m):
            u[t] /= un
        for j in range(k, n):
            proj = 0j
            for t in range(m):
                proj += u[t].conjugate() * h[k + 1 + t, j]
            proj *= 2.0
            for t in range(m):
                h[k + 1 + t, j] -= u[t] * proj
        for i in range(n):
            proj = 0j
            for t in range(m):
                proj += h[i, k + 1 + t] * u[t]
            proj *= 2.0
            for t in range(m):
                h[i, k + 1 + t] -= proj * u[t].conjugate()
        for r in range(k + 2, n):
            h[r, k] = 0j
    return h


@njit(cache=True)
def _givens(a, b):
    if b == 0:
        return 1.0, 0j
    if a == 0:
        return 0.0, b.conjugate() / abs(b)
    absa = abs(a)
    r = math.hypot(absa, abs(b))
    return absa / r, (a / absa) * b.conjugate() / r


@njit(cache=True)
def _eig2(a, b, c, d):
    m = 0.5 * (a + d)
    det = a * d - b * c
    disc = np.sqrt(m * m - det)
    if abs(m + disc) >= abs(m - disc):
        e1 = m + disc
    else:
        e1 = m - disc
    if e1 != 0:
        e2 = det / e1
    else:
        e2 = 0j
    return e1, e2


@njit(cache=True)
def _subdiag_small(h, r, tol, hnorm):
    thr = tol * (abs(h[r - 1, r - 1]) + abs(h[r, r]))
    if thr == 0.0:
        thr = tol * hnorm
    return abs(h[r, r - 1]) <= thr


@njit(cache=True)
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
    for i in range(lo, hi):
        c, s = _givens(h[i, i], h[i + 1, i])
        cs[i - lo] = c
        ss[i - lo] = s
        for j in range(i, n):
            t1 = h[i, j]
            t2 = h[i + 1, j]
            h[i, j] = c * t1 + s * t2
            h[i + 1, j] = -s.conjugate() * t1 + c * t2
    for i in range(lo, hi):
        c = cs[i - lo]
        s = ss[i - lo]
        r2 = min(i + 1, hi)
        for r in range(0, r2 + 1):
            t1 = h[r, i]
            t2 = h[r, i + 1]
            h[r, i] = t1 * c + t2 * s.conjugate()
            h[r, i + 1] = -t1 * s + t2 * c
    for t in range(lo, hi + 1):
        h[t, t] += mu


@njit(cache=True)
def eigvals(a, tol, itmax):
    n = a.shape[0]
    w = np.zeros(n, dtype=np.complex128)
    if n == 0:
        return w, 0, 0
    h = _hessenberg(_balance(a.copy()))
    hnorm = 0.0
    for i in range(n):
        for j in range(n):
            v = abs(h[i, j])
            if v > hnorm:
                hnorm = v
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
            h[hi, hi - 1] = 0j
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
            h[lo, lo - 1] = 0j
        stall += 1
        if stall % 16 == 0:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            e1, e2 = _eig2(h[hi - 1, hi - 1], h[hi - 1, hi],
                           h[hi, hi - 1], h[hi, hi])
            if abs(e1 - h[hi, hi]) <= abs(e2 - h[hi, hi]):
                mu = e1
            else:
                mu = e2
        _qr_step(h, lo, hi, mu)
        iters += 1
    return w, 0, iters


@njit(cache=True)
def rk4_closed_loop(acl, x0, dt, nsteps):
    n = x0.shape[0]
    states = np.empty((nsteps + 1, n, 4))
    for i in range(n):
        for c in range(4):
            states[0, i, c] = x0[i, c]
    x = x0.copy()
    half = 0.5 * dt
    sixth = dt / 6.0
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
