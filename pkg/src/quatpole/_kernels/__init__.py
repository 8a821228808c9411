"""Backend selection for the hot numeric kernels.

The compiled numba kernels are the default whenever numba imports cleanly.
``QUATPOLE_BACKEND=numpy`` forces the vectorized numpy fallback,
``QUATPOLE_BACKEND=numba`` makes a missing numba an error instead of a
silent downgrade.  `benchmarks/bench_backends.py` times one against the
other.
"""

from .. import config
from . import numpy_backend

_choice = config.backend_choice()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"QUATPOLE_BACKEND must be auto, numba or numpy, got {_choice!r}")

if _choice == "numpy":
    _impl = numpy_backend
else:
    try:
        from . import numba_backend as _impl
    except ImportError:
        if _choice == "numba":
            raise
        _impl = numpy_backend

BACKEND = _impl.NAME

quat_matmul = _impl.quat_matmul
quat_matvec = _impl.quat_matvec
eigvals = _impl.eigvals
rk4_closed_loop = _impl.rk4_closed_loop
