"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 numeric validation failure.
The tolerance for numeric validation can be set with ``QLOGIC_TOL``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import catalog, formats, laws, queries
from .errors import QLogicError, UnknownParameter
from .scenarios import sweep_row


class FileError(QLogicError):
    exit_code = 2


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc.strerror}") from None


def format_probability(p) -> str:
    s = format(p, ".12g")
    return s if any(c in s for c in ".eni") else s + ".0"


def cmd_check_lattice(args, out):
    L = formats.parse_lattice(_read(args.path))
    reports = laws.classify(L)
    if args.kv:
        out.write(f"elements={len(L)}\n")
        for r in reports:
            out.write(r.as_kv(L) + "\n")
    else:
        out.write(f"{args.path}: {len(L)} elements, {len(L.atoms())} atoms\n")
        for r in reports:
            out.write("  " + r.as_text(L) + "\n")
    return 0


def cmd_eval(args, out):
    sc = formats.parse_scenario(_read(args.scenario))
    texts = args.query or sc.queries
    if not texts:
        raise FileError("no queries: add a [query] section or pass --query")
    families = sc.build_families()
    prior = sc.build_prior(families)
    for text in texts:
        try:
            p = queries.probability(text, prior, families)
        except QLogicError as exc:
            exc.query = text
            raise
        out.write(f"{text} = {format_probability(p)}\n")
    return 0


def cmd_sweep(args, out):
    sc = formats.parse_scenario(_read(args.scenario))
    if args.param not in sc.params:
        raise UnknownParameter(f"scenario declares no parameter {args.param!r}")
    if args.steps < 2:
        raise FileError("--steps must be at least 2")
    detector = args.detector if args.detector is not None else 0
    rows = []
    for v in np.linspace(args.start, args.stop, args.steps):
        y = sc.with_params(**{args.param: float(v)}).build_young()
        rows.append(sweep_row(y, detector, v))
    if args.out in (None, "-"):
        formats.write_sweep_csv(rows, out)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            formats.write_sweep_csv(rows, fh)
    return 0


def cmd_catalog(args, out):
    L = catalog.get(args.name)
    text = formats.format_lattice(L, comment=f"catalog lattice {args.name}")
    if args.out == "-" or (args.out is None and args.dot in (None, "")):
        out.write(text)
    elif args.out is not None:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.dot:
        dot = formats.to_dot(L, args.name)
        if args.dot == "-":
            out.write(dot)
        else:
            Path(args.dot).write_text(dot, encoding="utf-8")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="qlogic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check-lattice", help="classify a lattice file")
    c.add_argument("path")
    c.add_argument("--kv", action="store_true", help="machine-readable key=value lines")
    c.set_defaults(func=cmd_check_lattice)

    e = sub.add_parser("eval", help="evaluate the queries of a scenario")
    e.add_argument("scenario")
    e.add_argument("--query", action="append", help="query to evaluate instead of [query] (repeatable)")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("sweep", help="sweep a [param] of a [young] scenario, write CSV")
    s.add_argument("scenario")
    s.add_argument("--param", required=True)
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--steps", type=int, default=64)
    s.add_argument("--detector", help="detector name (default: first detector)")
    s.add_argument("--out", help="CSV path ('-' or omitted: stdout)")
    s.set_defaults(func=cmd_sweep)

    k = sub.add_parser("catalog", help="emit a built-in lattice")
    k.add_argument("name", help=", ".join(sorted(catalog.CATALOG)))
    k.add_argument("--out", help="lattice file path ('-': stdout)")
    k.add_argument("--dot", help="DOT output path ('-': stdout)")
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except QLogicError as exc:
        query = getattr(exc, "query", None)
        prefix = f"{query}: " if query else ""
        err.write(f"qlogic {args.command}: error: {prefix}{exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
