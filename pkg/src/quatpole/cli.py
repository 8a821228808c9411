"""Command-line interface.

Subcommands: companion, place, spectrum, verify, simulate.  Exit codes are
part of the contract:

0  success (for place/verify: matched and stable)
1  parse or validation failure in an input file
2  uncontrollable pair
3  verification failed (spectrum mismatch or unstable)
4  scope violation (Ackermann with nonreal coefficients, no escape flag)
5  simulated trajectory diverged

Default tolerances come from the QUATPOLE_* environment variables listed
in `quatpole.config`.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .design import (companion_transform, place_ackermann, place_matching,
                     verify_placement)
from .errors import (DegreeError, DivergenceError, DuplicateClassError,
                     FormatError, NonRealCoefficientError, ShapeError,
                     UncontrollableError)
from .io import canonical_json
from .quaternion import Quaternion, format_quaternion
from .simulate import simulate_closed_loop
from .spectral import right_spectrum

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_UNCONTROLLABLE = 2
EXIT_VERIFY_FAILED = 3
EXIT_SCOPE = 4
EXIT_DIVERGED = 5


def _print_matrix(name, m):
    print(f"{name} =")
    for line in str(m).splitlines():
        print(f"  {line}")


def cmd_companion(args) -> int:
    system, digest = io.load_system(args.system)
    ct = companion_transform(system)
    _print_matrix("T", ct.T)
    _print_matrix("T_inv", ct.T_inv)
    _print_matrix("A_c", ct.A_c)
    _print_matrix("B_c", ct.B_c)
    print(f"companion polynomial: {ct.poly}")
    print(f"annihilation residual: {ct.annihilation_residual:.3e}")
    if args.out:
        io.write_report(args.out, io.companion_report_payload(
            ct, system.label, digest))
    return EXIT_OK


def cmd_place(args) -> int:
    system, sys_digest = io.load_system(args.system)
    spec, target_digest = io.load_target_spec(args.targets)
    a_d = spec.polynomial(system.order)
    if args.method == "matching":
        report = place_matching(system, a_d)
    else:
        report = place_ackermann(system, a_d,
                                 allow_nonreal=args.allow_nonreal)
    payload = io.design_report_payload(report, system.label, {
        "system_sha256": sys_digest,
        "targets_sha256": target_digest,
    })
    text = canonical_json(payload)
    print(text, end="")
    if args.out:
        io.write_report(args.out, payload)
    return EXIT_OK if report.matched and report.stable else EXIT_VERIFY_FAILED


def cmd_spectrum(args) -> int:
    matrix, label, digest = io.load_spectrum_matrix(args.matrix)
    spectrum = right_spectrum(matrix)
    for c, mult in spectrum.grouped():
        kind = "spherical class" if c.im_norm > 0.0 else "real class"
        rep = format_quaternion(Quaternion(c.re, c.im_norm))
        print(f"{rep}  multiplicity {mult}  ({kind})")
    print(f"stable: {spectrum.stable()}")
    if args.out:
        io.write_report(args.out, io.spectrum_report_payload(
            spectrum, spectrum.stable(), label, digest))
    return EXIT_OK


def cmd_verify(args) -> int:
    system, sys_digest = io.load_system(args.system)
    gain, gain_digest = io.load_gain(args.gain, system.order)
    spec, target_digest = io.load_target_spec(args.targets)
    targets = spec.spectrum(system.order)
    report = verify_placement(system, gain, targets)
    payload = io.design_report_payload(report, system.label, {
        "system_sha256": sys_digest,
        "gain_sha256": gain_digest,
        "targets_sha256": target_digest,
    })
    text = canonical_json(payload)
    print(text, end="")
    if args.out:
        io.write_report(args.out, payload)
    return EXIT_OK if report.matched and report.stable else EXIT_VERIFY_FAILED


def cmd_simulate(args) -> int:
    system, _ = io.load_system(args.system)
    gain, _ = io.load_gain(args.gain, system.order)
    x0 = io.load_state(args.x0, system.order)
    traj = simulate_closed_loop(system, gain, x0,
                                dt=args.dt, horizon=args.horizon)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            traj.to_csv(fh)
    else:
        traj.to_csv(sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatpole",
        description="Quaternionic single-input pole placement toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("companion",
                       help="companion form, transform and polynomial")
    p.add_argument("system", help="system JSON file")
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_companion)

    p = sub.add_parser("place", help="design a state-feedback gain")
    p.add_argument("system", help="system JSON file")
    p.add_argument("targets", help="pole target JSON file")
    p.add_argument("--method", choices=("matching", "ackermann"),
                   default="matching")
    p.add_argument("--allow-nonreal", action="store_true",
                   help="let the Ackermann path run on nonreal "
                        "coefficients (expected to mismatch)")
    p.add_argument("--out", help="write the design report here")
    p.set_defaults(func=cmd_place)

    p = sub.add_parser("spectrum", help="right-eigenvalue classes")
    p.add_argument("matrix", help="matrix or system JSON file")
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="check a gain against pole targets")
    p.add_argument("system", help="system JSON file")
    p.add_argument("gain", help="gain JSON file (or a design report)")
    p.add_argument("targets", help="pole target JSON file")
    p.add_argument("--out", help="write the verification report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="integrate the closed loop")
    p.add_argument("system", help="system JSON file")
    p.add_argument("gain", help="gain JSON file (or a design report)")
    p.add_argument("x0", help="initial state: JSON file or inline literal")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--horizon", type=float, default=10.0)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, DegreeError, DuplicateClassError,
            ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UncontrollableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCONTROLLABLE
    except NonRealCoefficientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
