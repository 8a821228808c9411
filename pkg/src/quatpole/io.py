"""File formats: systems, pole targets, gains, states and reports.

Everything on disk is UTF-8 JSON.  Quaternions are 4-arrays [w, x, y, z]
of finite numbers; matrices are nested row-major arrays of those.  Writers
go through `canonical_json`, which sorts keys and lets floats round-trip
exactly, so serialize -> parse -> serialize is byte-identical.  Every
report embeds the sha256 digest of the input files it came from.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

from . import config
from .design import CompanionTransform, DesignReport, SystemHx
from .errors import FormatError
from .qmatrix import QMatrix
from .qpoly import QPoly
from .quaternion import Quaternion, SimilarityClass
from .spectral import Spectrum


# -- primitives ---------------------------------------------------------------

def canonical_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True,
                      ensure_ascii=False) + "\n"


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def load_json(path):
    """Read a JSON file; returns (payload, sha256 digest of the bytes)."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    digest = sha256_hex(raw)
    try:
        payload = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc
    return payload, digest


def _check_quat(node, where) -> list:
    if (not isinstance(node, (list, tuple)) or len(node) != 4
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                       for v in node)):
        raise FormatError(
            f"{where}: expected a quaternion 4-array [w, x, y, z]")
    values = [float(v) for v in node]
    if not all(math.isfinite(v) for v in values):
        raise FormatError(f"{where}: quaternion components must be finite")
    return values


def parse_matrix(node, where, rows=None, cols=None) -> QMatrix:
    if not isinstance(node, list) or not node:
        raise FormatError(f"{where}: expected a nested array of rows")
    grid = []
    width = None
    for i, row in enumerate(node):
        if not isinstance(row, list) or not row:
            raise FormatError(f"{where}: row {i} is not a nonempty array")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"{where}: ragged rows")
        grid.append([_check_quat(e, f"{where}[{i}][{j}]")
                     for j, e in enumerate(row)])
    m = QMatrix(grid)
    if rows is not None and m.rows != rows:
        raise FormatError(f"{where}: expected {rows} rows, got {m.rows}")
    if cols is not None and m.cols != cols:
        raise FormatError(f"{where}: expected {cols} columns, got {m.cols}")
    return m


def parse_column(node, where, rows=None) -> QMatrix:
    if not isinstance(node, list) or not node:
        raise FormatError(f"{where}: expected an array of quaternions")
    col = QMatrix.column([_check_quat(e, f"{where}[{i}]")
                          for i, e in enumerate(node)])
    if rows is not None and col.rows != rows:
        raise FormatError(f"{where}: expected {rows} entries, got {col.rows}")
    return col


# -- systems ------------------------------------------------------------------

def parse_system(payload) -> SystemHx:
    if not isinstance(payload, dict):
        raise FormatError("system file must hold a JSON object")
    n = payload.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError("system file needs a positive integer 'n'")
    if "A" not in payload or "B" not in payload:
        raise FormatError("system file needs 'A' and 'B'")
    a = parse_matrix(payload["A"], "A", rows=n, cols=n)
    b = parse_column(payload["B"], "B", rows=n)
    label = payload.get("label")
    if label is not None and not isinstance(label, str):
        raise FormatError("'label' must be a string")
    return SystemHx(A=a, B=b, label=label)


def load_system(path):
    payload, digest = load_json(path)
    return parse_system(payload), digest


def load_spectrum_matrix(path):
    """Matrix for spectrum reports: either {'M': ...} or a system's A."""
    payload, digest = load_json(path)
    if not isinstance(payload, dict):
        raise FormatError("matrix file must hold a JSON object")
    if "M" in payload:
        m = parse_matrix(payload["M"], "M")
    elif "A" in payload:
        m = parse_matrix(payload["A"], "A")
    else:
        raise FormatError("matrix file needs 'M' (or a system's 'A')")
    if not m.is_square():
        raise FormatError("spectrum needs a square matrix")
    return m, payload.get("label"), digest


# -- pole targets -------------------------------------------------------------

_TARGET_KINDS = ("real_poles", "quaternion_roots", "polynomial")


@dataclass(frozen=True)
class TargetSpec:
    """One of three equivalent ways to state the desired closed-loop poles."""

    kind: str
    values: tuple

    def polynomial(self, n: int) -> QPoly:
        """Monic degree-n target polynomial for this spec.

        Enforces the degree budget: real poles use one degree, nonreal
        (spherical) poles two, quaternion roots one each.
        """
        if self.kind == "real_poles":
            classes = [SimilarityClass(re, abs(im)) for re, im in self.values]
            budget = sum(1 if c.is_real() else 2 for c in classes)
            if budget != n:
                raise FormatError(
                    f"pole classes consume degree {budget}, system order "
                    f"is {n} (reals count one, spherical classes two)")
            return QPoly.from_real_poles(classes, degree=n)
        if self.kind == "quaternion_roots":
            if len(self.values) != n:
                raise FormatError(
                    f"{len(self.values)} quaternion roots given, system "
                    f"order is {n}")
            return QPoly.from_right_zeros(
                [Quaternion.from_wxyz(v) for v in self.values])
        poly = QPoly(self.values)
        if poly.degree != n or not poly.is_monic():
            raise FormatError(
                f"target polynomial must be monic of degree {n}")
        return poly

    def spectrum(self, n: int) -> Spectrum:
        """Requested class multiset (resolves the polynomial's zero classes)."""
        if self.kind == "real_poles":
            classes = []
            for re, im in self.values:
                c = SimilarityClass(re, abs(im))
                classes.extend([c] if c.is_real() else [c, c])
            if len(classes) != n:
                raise FormatError(
                    f"pole classes consume degree {len(classes)}, system "
                    f"order is {n}")
            return Spectrum(classes)
        if self.kind == "quaternion_roots":
            if len(self.values) != n:
                raise FormatError(
                    f"{len(self.values)} quaternion roots given, system "
                    f"order is {n}")
            return Spectrum([SimilarityClass.of(Quaternion.from_wxyz(v))
                             for v in self.values])
        return self.polynomial(n).right_zero_classes()


def parse_target_spec(payload) -> TargetSpec:
    if not isinstance(payload, dict):
        raise FormatError("target file must hold a JSON object")
    present = [k for k in _TARGET_KINDS if k in payload]
    if len(present) != 1:
        raise FormatError(
            f"target file needs exactly one of {', '.join(_TARGET_KINDS)}")
    kind = present[0]
    node = payload[kind]
    if not isinstance(node, list) or not node:
        raise FormatError(f"'{kind}' must be a nonempty array")
    if kind == "real_poles":
        values = []
        for i, pair in enumerate(node):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(v, (int, float))
                               and not isinstance(v, bool) for v in pair)):
                raise FormatError(
                    f"real_poles[{i}]: expected [re, im]")
            if not all(math.isfinite(float(v)) for v in pair):
                raise FormatError(f"real_poles[{i}]: values must be finite")
            values.append((float(pair[0]), float(pair[1])))
    else:
        values = [tuple(_check_quat(e, f"{kind}[{i}]"))
                  for i, e in enumerate(node)]
    return TargetSpec(kind=kind, values=tuple(values))


def load_target_spec(path):
    payload, digest = load_json(path)
    return parse_target_spec(payload), digest


# -- gains and states -----------------------------------------------------------

def parse_gain(payload, n) -> QMatrix:
    """Gain row from {'K': [...]} or from a previously written report."""
    if not isinstance(payload, dict) or "K" not in payload:
        raise FormatError("gain file needs a 'K' row")
    node = payload["K"]
    if not isinstance(node, list) or not node:
        raise FormatError("'K' must be a nonempty array of quaternions")
    if n is not None and len(node) != n:
        raise FormatError(f"'K' has {len(node)} entries, expected {n}")
    return QMatrix.row([_check_quat(e, f"K[{i}]")
                        for i, e in enumerate(node)])


def load_gain(path, n):
    payload, digest = load_json(path)
    return parse_gain(payload, n), digest


def parse_state(node, n) -> QMatrix:
    if isinstance(node, dict):
        node = node.get("x0")
    if not isinstance(node, list):
        raise FormatError("initial state must be an array of quaternions")
    return parse_column(node, "x0", rows=n)


def load_state(source, n):
    """Initial state from a file path or an inline JSON literal."""
    text = source.strip()
    if text.startswith("[") or text.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"inline x0 is not valid JSON: {exc}") from exc
        return parse_state(payload, n)
    payload, _ = load_json(source)
    return parse_state(payload, n)


# -- serialization helpers --------------------------------------------------------

def quaternion_to_list(q: Quaternion):
    return [float(v) for v in q.wxyz]


def matrix_to_nested(m: QMatrix):
    return m.to_nested()


def round_sig(value: float, digits: int = 2) -> float:
    """Round to significant digits, the way results are quoted in print."""
    if value == 0.0 or not math.isfinite(value):
        return value
    scale = digits - 1 - math.floor(math.log10(abs(value)))
    return round(value, scale)


def _rounded(obj):
    if isinstance(obj, list):
        return [_rounded(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, float):
        return round_sig(obj)
    return obj


def spectrum_to_list(spectrum: Spectrum, tol=None):
    return [{"re": c.re, "im": c.im_norm, "multiplicity": mult}
            for c, mult in spectrum.grouped(tol)]


def poly_to_list(poly: QPoly):
    return [quaternion_to_list(c) for c in poly.coeffs]


def companion_report_payload(ct: CompanionTransform, label, digest):
    return {
        "kind": "companion-report",
        "label": label,
        "n": ct.A_c.rows,
        "T": matrix_to_nested(ct.T),
        "T_inv": matrix_to_nested(ct.T_inv),
        "A_c": matrix_to_nested(ct.A_c),
        "B_c": matrix_to_nested(ct.B_c),
        "polynomial": poly_to_list(ct.poly),
        "annihilation_residual": float(ct.annihilation_residual),
        "rounded": {
            "A_c": _rounded(matrix_to_nested(ct.A_c)),
            "polynomial": _rounded(poly_to_list(ct.poly)),
        },
        "inputs": {"system_sha256": digest},
    }


def design_report_payload(report: DesignReport, label, digests):
    residual_annihilation = report.residual_annihilation
    if residual_annihilation is not None:
        residual_annihilation = float(residual_annihilation)
    return {
        "kind": "design-report",
        "label": label,
        "method": report.method,
        "n": report.A_cl.rows,
        "K": matrix_to_nested(report.K)[0],
        "A_cl": matrix_to_nested(report.A_cl),
        "target": spectrum_to_list(report.target),
        "achieved": spectrum_to_list(report.achieved),
        "matched": report.matched,
        "stable": report.stable,
        "residuals": {
            "annihilation": residual_annihilation,
            "placement": float(report.residual_placement),
        },
        "rounded": {
            "K": _rounded(matrix_to_nested(report.K)[0]),
            "A_cl": _rounded(matrix_to_nested(report.A_cl)),
            "achieved": _rounded(spectrum_to_list(report.achieved)),
        },
        "tolerances": {
            "match": config.match_tol(),
            "class": config.class_tol(),
        },
        "warnings": list(report.warnings),
        "inputs": digests,
    }


def spectrum_report_payload(spectrum: Spectrum, stable, label, digest):
    classes = []
    for c, mult in spectrum.grouped():
        classes.append({
            "re": c.re,
            "im": c.im_norm,
            "multiplicity": mult,
            "spherical": c.im_norm > 0.0,
        })
    return {
        "kind": "spectrum-report",
        "label": label,
        "classes": classes,
        "stable": stable,
        "rounded": {"classes": _rounded([[c.re, c.im_norm]
                                         for c in spectrum.classes])},
        "inputs": {"matrix_sha256": digest},
    }


def write_report(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(payload))
