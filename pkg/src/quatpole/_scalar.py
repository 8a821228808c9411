"""Low-level quaternion arithmetic on plain (w, x, y, z) float tuples.

Shared by the scalar `Quaternion` class and the elimination routines in
`qmatrix`, where tuples of Python floats beat per-entry numpy arrays by a
wide margin at the tiny sizes this package works with.
"""

from math import sqrt

ZERO = (0.0, 0.0, 0.0, 0.0)
ONE = (1.0, 0.0, 0.0, 0.0)


def qmul(a, b):
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def qadd(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def qsub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])


def qneg(a):
    return (-a[0], -a[1], -a[2], -a[3])


def qscale(a, s):
    return (a[0] * s, a[1] * s, a[2] * s, a[3] * s)


def qconj(a):
    return (a[0], -a[1], -a[2], -a[3])


def qnorm_sq(a):
    return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]


def qnorm(a):
    return sqrt(qnorm_sq(a))


def qinv(a):
    n2 = qnorm_sq(a)
    if n2 == 0.0:
        raise ZeroDivisionError("zero quaternion has no inverse")
    return (a[0] / n2, -a[1] / n2, -a[2] / n2, -a[3] / n2)
