"""Default tolerances, overridable through environment variables.

Environment variables are read at call time so a long-running process (or a
test) can adjust them without re-importing:

======================  =======  ===============================================
variable                default  meaning
======================  =======  ===============================================
QUATPOLE_CLASS_TOL      1e-9     similarity-class equality (re, |Im|) tolerance
QUATPOLE_MATCH_TOL      1e-6     spectrum multiset matching tolerance
QUATPOLE_PIVOT_RTOL     1e-12    pivot threshold, relative to max entry norm
QUATPOLE_PAIR_TOL       1e-8     conjugate-pair matching in the embedding
QUATPOLE_BACKEND        auto     kernel backend: auto | numba | numpy
======================  =======  ===============================================
"""

import os

DEFAULT_CLASS_TOL = 1e-9
DEFAULT_MATCH_TOL = 1e-6
DEFAULT_PIVOT_RTOL = 1e-12
DEFAULT_PAIR_TOL = 1e-8


def _env_float(name, default):
    raw = os.environ.get(name)
    return default if raw is None else float(raw)


def class_tol():
    """Tolerance for treating two similarity classes as equal."""
    return _env_float("QUATPOLE_CLASS_TOL", DEFAULT_CLASS_TOL)


def match_tol():
    """Tolerance used when matching achieved spectra against targets."""
    return _env_float("QUATPOLE_MATCH_TOL", DEFAULT_MATCH_TOL)


def pivot_rtol():
    """Relative pivot threshold for elimination-based solves and ranks."""
    return _env_float("QUATPOLE_PIVOT_RTOL", DEFAULT_PIVOT_RTOL)


def pair_tol():
    """Tolerance for pairing conjugate eigenvalues of the complex embedding."""
    return _env_float("QUATPOLE_PAIR_TOL", DEFAULT_PAIR_TOL)


def backend_choice():
    """Requested kernel backend: 'auto', 'numba' or 'numpy'."""
    return os.environ.get("QUATPOLE_BACKEND", "auto").strip().lower()
