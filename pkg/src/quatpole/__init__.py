"""quatpole: quaternionic linear algebra and single-input pole placement.

Scalars, dense matrices and polynomials over the quaternions; right
spectra through the complex-adjoint embedding with an in-package QR
eigensolver; companion-form transforms; pole placement by coefficient
matching or the Ackermann-style one-shot gain; a fixed-step closed-loop
simulator; and a JSON/CSV command-line front end (`quatpole --help`).
"""

from . import config, errors
from ._kernels import BACKEND
from .design import (CompanionTransform, DesignReport, SystemHx,
                     companion_transform, controllability_matrix,
                     intertwining_residual, is_controllable, place_ackermann,
                     place_matching, verify_placement)
from .qmatrix import QMatrix
from .qpoly import QPoly
from .quaternion import (Quaternion, SimilarityClass, format_quaternion,
                         random_quaternion, similar, standard_rep)
from .simulate import Trajectory, simulate_closed_loop
from .spectral import (Spectrum, complex_eigenvalues, is_stable,
                       match_residual, right_spectrum, spectra_match)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CompanionTransform",
    "DesignReport",
    "QMatrix",
    "QPoly",
    "Quaternion",
    "SimilarityClass",
    "Spectrum",
    "SystemHx",
    "Trajectory",
    "companion_transform",
    "complex_eigenvalues",
    "config",
    "controllability_matrix",
    "errors",
    "format_quaternion",
    "intertwining_residual",
    "is_controllable",
    "is_stable",
    "match_residual",
    "place_ackermann",
    "place_matching",
    "random_quaternion",
    "right_spectrum",
    "similar",
    "simulate_closed_loop",
    "spectra_match",
    "standard_rep",
    "verify_placement",
]
