"""Time the numba kernels against the pure-numpy fallbacks.

Run from the repository root:

    python benchmarks/bench_backends.py [--repeats 5]

Covers the three hot loops: quaternion matrix products, the complex
Hessenberg+QR eigensolver on adjoint-sized matrices, and the fixed-step
integrator.  The numba path is compiled (and cached) on first call; the
warmup pass keeps compilation out of the timings.
"""

import argparse
import time

import numpy as np

from quatpole._kernels import numpy_backend

try:
    from quatpole._kernels import numba_backend
except ImportError:
    numba_backend = None


def best_of(repeats, fn, *args):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_case(name, repeats, fn_numpy, fn_numba, args):
    t_np = best_of(repeats, fn_numpy, *args)
    if fn_numba is None:
        print(f"{name:<38} numpy {t_np * 1e3:9.3f} ms   numba      n/a")
        return
    fn_numba(*args)  # warmup / compile
    t_nb = best_of(repeats, fn_numba, *args)
    print(f"{name:<38} numpy {t_np * 1e3:9.3f} ms   "
          f"numba {t_nb * 1e3:9.3f} ms   speedup {t_np / t_nb:6.1f}x")


def matmul_loop(backend, a, b, iters):
    for _ in range(iters):
        backend.quat_matmul(a, b)


def eig_loop(backend, mats, tol, cap):
    for z in mats:
        backend.eigvals(z, tol, cap)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    repeats = args.repeats
    rng = np.random.default_rng(0)

    if numba_backend is None:
        print("numba not importable; timing the numpy fallback only")

    # quaternion matmul: many small products (the design workload) and
    # one big product (throughput)
    small_a = rng.normal(size=(6, 6, 4))
    small_b = rng.normal(size=(6, 6, 4))
    bench_case("matmul 6x6, 2000 calls", repeats,
               lambda a, b: matmul_loop(numpy_backend, a, b, 2000),
               (None if numba_backend is None else
                (lambda a, b: matmul_loop(numba_backend, a, b, 2000))),
               (small_a, small_b))
    big_a = rng.normal(size=(96, 96, 4))
    big_b = rng.normal(size=(96, 96, 4))
    bench_case("matmul 96x96, single call", repeats,
               numpy_backend.quat_matmul,
               None if numba_backend is None else numba_backend.quat_matmul,
               (big_a, big_b))

    # eigensolver on embedding-sized complex matrices
    tol = 4.0 * np.finfo(np.float64).eps
    mats = [np.ascontiguousarray(rng.normal(size=(12, 12))
                                 + 1j * rng.normal(size=(12, 12)))
            for _ in range(200)]
    bench_case("eigvals 12x12 complex, 200 calls", repeats,
               lambda ms: eig_loop(numpy_backend, ms, tol, 14400),
               (None if numba_backend is None else
                (lambda ms: eig_loop(numba_backend, ms, tol, 14400))),
               (mats,))

    # integrator: 10k steps of a 4-state closed loop
    acl = np.ascontiguousarray(0.3 * rng.normal(size=(4, 4, 4)))
    x0 = rng.normal(size=(4, 4))
    bench_case("rk4 4 states, 10000 steps", repeats,
               numpy_backend.rk4_closed_loop,
               (None if numba_backend is None
                else numba_backend.rk4_closed_loop),
               (acl, x0, 1e-3, 10000))


if __name__ == "__main__":
    main()
