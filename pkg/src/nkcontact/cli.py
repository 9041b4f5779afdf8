"""Command-line front end: ``nkcontact {check,compute,soliton} FILE ...``.

Exit codes: 0 when every check passes (or is not applicable), 1 when any
check fails or errors, 2 for usage, parse and validation errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .config import P_SYMBOL, GeomDocument
from .contact import CONTACT_FORMS, exterior_derivative_eta
from .engine import ALL_CHECKS, analyze, run_checks, run_soliton
from .frame import FrameError, TensorField
from .geomfile import GeomParseError, load_manifold_file
from .scalar import ScalarError, parse_scalar

TENSORS = ("connection", "riemann", "ricci", "scalar", "h", "star-ricci", "star-scalar", "dEta")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _sign(text: str) -> int:
    if text not in ("1", "+1", "-1"):
        raise argparse.ArgumentTypeError("curvature sign must be +1 or -1")
    return -1 if text == "-1" else 1


def _assignment(text: str) -> tuple[str, Fraction]:
    name, eq, value = text.partition("=")
    if not eq:
        raise argparse.ArgumentTypeError("expected NAME=VALUE")
    try:
        return name.strip(), Fraction(value.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value.strip()!r} is not a rational number") from None


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="manifold file (.geom)")
    common.add_argument("--param", type=_assignment, action="append", default=[],
                        metavar="NAME=VALUE", help="substitute the manifold parameter")
    common.add_argument("--curvature-sign", type=_sign, default=None, metavar="{+1,-1}",
                        help="overall sign of R (default: $GEOM_CURVATURE_SIGN or +1)")
    common.add_argument("--contact-form", choices=CONTACT_FORMS, default="B",
                        help="A: g(phi X, Y) = d eta(X,Y); B: g(X, phi Y) = d eta(X,Y)")

    p = argparse.ArgumentParser(prog="nkcontact", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    check = sub.add_parser("check", parents=[common], help="run identity checks")
    check.add_argument("--identity", action="append", default=[], metavar="ID",
                       help=f"check id to run (repeatable); one of: {', '.join(ALL_CHECKS)}")
    check.add_argument("--json", action="store_true")

    compute = sub.add_parser("compute", parents=[common], help="print a tensor")
    compute.add_argument("--tensor", required=True, choices=TENSORS)

    soliton = sub.add_parser("soliton", parents=[common], help="soliton residuals and consequences")
    how = soliton.add_mutually_exclusive_group()
    how.add_argument("--lambda", dest="lam", metavar="SCALAR", help="lambda, may involve p")
    how.add_argument("--solve", action="store_true", help="solve for lambda (default when unset)")
    soliton.add_argument("--trace-only", action="store_true",
                         help="solve lambda from the trace of the soliton equation")
    soliton.add_argument("--json", action="store_true")
    return p


def _load(args) -> GeomDocument:
    doc = load_manifold_file(args.file)
    for name, value in args.param:
        if name != doc.manifold.param:
            raise UsageError(f"unknown parameter {name!r}")
        doc = doc.substitute(value)
    return doc


def _emit(report, as_json: bool, out) -> int:
    out.write(report.dumps() if as_json else report.text())
    return report.exit_code()


def _compute(args, doc: GeomDocument, out) -> int:
    a = analyze(doc, args.curvature_sign)
    m = a.manifold
    names = m.frame_names
    what = args.tensor
    if what in ("h", "star-ricci", "star-scalar", "dEta") and a.contact is None:
        raise UsageError(f"--tensor {what} needs a [contact] section")
    if what == "connection":
        lines = a.conn.as_tensor().lines(names, "Gamma")
    elif what == "riemann":
        lines = a.curv.as_tensor().lines(names, "R")
    elif what == "ricci":
        lines = a.curv.ricci.lines(names, "Ric")
    elif what == "scalar":
        lines = [f"r = {a.curv.scalar}"]
    elif what == "h":
        lines = TensorField(1, 1, a.contact.h).lines(names, "h")
    elif what == "star-ricci":
        lines = a.star.s_star.lines(names, "S*")
    elif what == "star-scalar":
        lines = [f"r* = {a.star.r_star}"]
    else:
        lines = exterior_derivative_eta(m, a.contact).lines(names, "dEta")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _soliton(args, doc: GeomDocument, out) -> int:
    if doc.soliton is None:
        raise UsageError("file has no [soliton] section")
    cfg = doc.soliton
    if args.lam is not None:
        try:
            cfg = cfg.with_lambda(parse_scalar(args.lam, P_SYMBOL))
        except ScalarError as exc:
            raise UsageError(f"--lambda: {exc}") from None
    elif args.solve:
        cfg = cfg.with_lambda(None)
    if args.trace_only and cfg.lam is not None:
        raise UsageError("--trace-only only applies when lambda is solved")
    report = run_soliton(replace(doc, soliton=cfg), args.curvature_sign, args.contact_form,
                         trace_only=args.trace_only)
    return _emit(report, args.json, out)


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        doc = _load(args)
        if args.verb == "check":
            report = run_checks(doc, args.curvature_sign, args.contact_form, args.identity or None)
            return _emit(report, args.json, out)
        if args.verb == "compute":
            return _compute(args, doc, out)
        return _soliton(args, doc, out)
    except (OSError, GeomParseError, FrameError, ScalarError, UsageError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"nkcontact: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
