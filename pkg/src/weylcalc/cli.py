"""Command-line interface: ``weylcalc jantzen | structure | verify-tables | dim | roots``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import tables
from .cartan import E6, CartanData, CartanError, Weight, format_weight, from_json, preset, root_as_weight
from .jantzen import Contribution, InvariantViolation, RegimeError, analyze, report, sum_of
from .scalars import Concrete, Generic, Indeterminate, PrimeMode, PrimeScalar, UnsupportedMode
from .structure import deduce
from .weyl import weyl_dimension

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INDETERMINATE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def dump_json(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --- weight syntax ----------------------------------------------------------

_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(\*?\s*p)?\s*")


def parse_scalar(text: str) -> PrimeScalar:
    """Parse an affine expression in ``p`` such as ``p-8``, ``2p+1``, ``-p``, ``7``."""
    s = text.strip()
    if not s:
        raise UsageError("empty weight coordinate")
    a = b = 0
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign_, digits, has_p = m.group(1), m.group(2), m.group(3)
        if m.end() == pos or not (digits or has_p) or (not first and not sign_):
            raise UsageError(f"cannot parse weight coordinate {text!r}")
        k = int(digits) if digits else 1
        k = -k if sign_ == "-" else k
        if has_p:
            a += k
        else:
            b += k
        pos = m.end()
        first = False
    return PrimeScalar(a, b)


def parse_weight(text: str, mode: Optional[PrimeMode], rank: int) -> Weight:
    """Accept ``p-8,0,0,0,0,1`` or a JSON list of integers / ``[a, b]`` pairs."""
    text = text.strip()
    if text.startswith("["):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad weight JSON: {exc}") from None
        if not isinstance(raw, list):
            raise UsageError("weight JSON must be a list")
        try:
            coords = [PrimeScalar.from_json(x) for x in raw]
        except (TypeError, ValueError):
            raise UsageError(f"bad weight JSON: {text}") from None
    else:
        coords = [parse_scalar(part) for part in text.split(",")]
    if len(coords) != rank:
        raise UsageError(f"weight has {len(coords)} coordinates, root system has rank {rank}")
    w = Weight(tuple(coords))
    return w if mode is None else w.normalize(mode)


def _mode(args) -> Optional[PrimeMode]:
    if getattr(args, "p", None) is not None and getattr(args, "generic", False):
        raise UsageError("give exactly one of --p and --generic")
    if getattr(args, "p0", None) is not None and not getattr(args, "generic", False):
        raise UsageError("--p0 needs --generic")
    try:
        if getattr(args, "generic", False):
            return Generic(args.p0 if args.p0 is not None else 11)
        if getattr(args, "p", None) is not None:
            return Concrete(args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return None


def _required_mode(args) -> PrimeMode:
    mode = _mode(args)
    if mode is None:
        raise UsageError("give exactly one of --p N and --generic")
    return mode


def _data(args) -> CartanData:
    if getattr(args, "cartan", None):
        return from_json(Path(args.cartan))
    try:
        return preset(args.type)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"unknown root system type {args.type!r}") from exc


# --- rendering ----------------------------------------------------------------


def _spaced_scalar(x: PrimeScalar) -> str:
    if x.a == 0:
        return str(x.b)
    head = {1: "p", -1: "-p"}.get(x.a, f"{x.a}p")
    if x.b == 0:
        return head
    return f"{head} {'+' if x.b > 0 else '-'} {abs(x.b)}"


def _tuple(xs) -> str:
    return "[" + ", ".join(_spaced_scalar(PrimeScalar.coerce(x)) for x in xs) + "]"


def _jantzen_text(lam: Weight, mode: PrimeMode, rows, data: CartanData) -> str:
    out = [f"lambda = {format_weight(lam)}   ({mode})", f"relevant multiples: {len(rows)}"]
    for row in rows:
        rm = row.multiple
        head = f"  m={rm.m} alpha={list(rm.root.coeffs)} vp={rm.vp_weight}  lambda+rho-mp*alpha={row.mu}"
        if isinstance(row, Contribution):
            out.append(f"{head}  contributor w={list(row.word)} sign={row.sign:+d} -> {row.mu_prime}")
        else:
            out.append(f"{head}  non-contributor beta={list(row.witness.coeffs)}")
    out.append(f"J({format_weight(lam)}) = {sum_of(rows).format('text')}")
    return "\n".join(out) + "\n"


def _jantzen_latex(lam: Weight, rows) -> str:
    """One block in the layout of the published tables."""
    non = [r for r in rows if not isinstance(r, Contribution)]
    con = [r for r in rows if isinstance(r, Contribution)]
    lines = [
        "\\begin{tabular}{|c|c|c|c|c|} ",
        "\\hline",
        "$\\lambda$ & $m\\alpha$ & &\\\\",
        "\\hline",
    ]
    if non:
        lines += ["& & $\\lambda+\\rho-pm\\alpha$ & $\\beta$ \\\\", "\\cline{2-4}"]
    label = "$" + re.sub(r"p([+-])(\d)", r"p \1 \2", format_weight(lam, "latex")) + "$"
    first = True
    for r in non:
        lead = label + "\n" if first else ""
        first = False
        lines.append(f"{lead}&${_tuple(r.multiple.multiple.scaled)}$ & ${_tuple(r.mu.coords)}$ & "
                     f"${_tuple(r.witness.coeffs)}$\\\\")
    if con:
        if non:
            lines.append("\\cline{2-4}")
        lines += ["& & $w$ & $w(\\lambda+\\rho-pm\\alpha)-\\rho$ \\\\", "\\cline{2-4}"]
    for r in con:
        lead = label + "\n" if first else ""
        first = False
        lines.append(f"{lead}&${_tuple(r.multiple.multiple.scaled)}$ & ${_tuple(r.word)}$ & "
                     f"${_tuple(r.mu_prime.coords)}$\\\\")
    lines += ["\\hline", "\\end{tabular}", f"% J = {sum_of(rows).format('latex')}"]
    return "\n".join(lines) + "\n"


def _sequence_latex(rep) -> str:
    body = rep.render("latex")
    if rep.complete and " is simple" not in body:
        return "$$\n" + body + ".\n$$\n"
    return body + "\n"


# --- commands -------------------------------------------------------------------


def cmd_jantzen(args, out) -> int:
    mode = _required_mode(args)
    data = _data(args)
    lam = parse_weight(args.weight, mode, data.rank)
    if args.format == "json":
        out.write(dump_json(report(lam, mode, data)))
        return EXIT_OK
    rows = analyze(lam, mode, data)
    out.write(_jantzen_latex(lam, rows) if args.format == "latex" else _jantzen_text(lam, mode, rows, data))
    return EXIT_OK


def cmd_structure(args, out) -> int:
    mode = _required_mode(args)
    data = _data(args)
    lam = parse_weight(args.weight, mode, data.rank)
    rep = deduce(lam, mode, args.depth, data)
    if args.format == "json":
        out.write(dump_json(rep.to_json()))
    elif args.format == "latex":
        out.write(_sequence_latex(rep))
    else:
        for link in sorted(rep.links, key=lambda l: l.level):
            J = "?" if link.J is None else link.J.format("text")
            rule = f" [{link.rule}]" if link.rule else ""
            out.write(f"level {link.level}: J({format_weight(link.weight)}) = {J}  => {link.verdict.kind}{rule}\n")
            for note in link.notes:
                out.write(f"    note: {note}\n")
        out.write(rep.render("text") + "\n")
        if not rep.complete:
            out.write(f"verdict: undetermined at depth {rep.depth_limit}\n")
    return EXIT_OK


def cmd_verify_tables(args, out) -> int:
    mode = _mode(args)
    directory = tables.fixture_dir(args.fixtures)
    try:
        fixtures = tables.load_fixtures(directory, check=not args.no_checksum)
    except tables.ChecksumMismatch as exc:
        print(f"checksum mismatch: {exc}", file=sys.stderr)
        return EXIT_USAGE
    known = {f.id for f in fixtures} | {f.group for f in fixtures}
    for name in args.only or ():
        if name not in known:
            raise UsageError(f"unknown table {name!r}")
    substitute = tuple(args.substitute) if args.substitute else tables.SUBSTITUTE_PRIMES
    summary = tables.verify_all(fixtures, modes=None if mode is None else [mode], substitute=substitute,
                                only=args.only or None, data=_data(args))
    if args.junit:
        Path(args.junit).write_text(summary.to_junit(), encoding="utf-8")
    if args.json:
        Path(args.json).write_text(dump_json(summary.to_json()), encoding="utf-8")
    out.write(dump_json(summary.to_json()) if args.format == "json" else summary.text() + "\n")
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_dim(args, out) -> int:
    data = _data(args)
    lam = parse_weight(args.weight, None, data.rank)
    if not lam.is_constant:
        raise UsageError("dim needs a p-free weight")
    try:
        d = weyl_dimension(lam, data)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(dump_json({"weight": lam.ints(), "dimension": d}) if args.format == "json" else f"{d}\n")
    return EXIT_OK


def cmd_roots(args, out) -> int:
    data = _data(args)
    roots = data.positive_roots
    if args.format == "json":
        out.write(dump_json([
            {"root": list(a.coeffs), "height": a.height, "weight": root_as_weight(a, data).ints()} for a in roots
        ]))
        return EXIT_OK
    out.write(f"{len(roots)} positive roots\n")
    for a in roots:
        out.write(f"{list(a.coeffs)}  height {a.height}  weight {root_as_weight(a, data).ints()}\n")
    return EXIT_OK


# --- argument parsing -------------------------------------------------------------


def _add_common(sp, weight=True, prime=True, fmt=("text", "json", "latex")):
    if weight:
        sp.add_argument("--weight", required=True, help="e.g. p-8,0,0,0,0,1 or [[1,-8],0,0,0,0,1]")
    if prime:
        sp.add_argument("--p", type=int, help="a concrete prime")
        sp.add_argument("--generic", action="store_true", help="all primes p >= P0 at once")
        sp.add_argument("--p0", type=int, help="lower bound P0 for --generic (default 11)")
    sp.add_argument("--format", choices=fmt, default="text")
    sp.add_argument("--type", default="E6", help="root system preset, e.g. E6, A3, G2")
    sp.add_argument("--cartan", help="JSON file with a Cartan matrix or Dynkin edges")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weylcalc", description="Jantzen sums and Weyl module structure")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("jantzen", help="relevant multiples and the Jantzen sum J(lambda)")
    _add_common(sp)
    sp.set_defaults(func=cmd_jantzen)

    sp = sub.add_parser("structure", help="deduce a submodule structure by iterating the sum formula")
    _add_common(sp)
    sp.add_argument("--depth", type=int, default=2)
    sp.set_defaults(func=cmd_structure)

    sp = sub.add_parser("verify-tables", help="check every fixture row against the engine")
    _add_common(sp, weight=False, fmt=("text", "json"))
    sp.add_argument("--fixtures", help="fixture directory (default: bundled, or $WEYLCALC_FIXTURES)")
    sp.add_argument("--only", action="append", help="table id or group; repeatable")
    sp.add_argument("--substitute", type=int, action="append",
                    help="prime to substitute into generic tables; repeatable (default 11, 13, 17)")
    sp.add_argument("--junit", help="write a JUnit XML report here")
    sp.add_argument("--json", help="write the JSON summary here")
    sp.add_argument("--no-checksum", action="store_true", help="skip the fixture checksum check")
    sp.set_defaults(func=cmd_verify_tables)

    sp = sub.add_parser("dim", help="Weyl module dimension")
    _add_common(sp, prime=False, fmt=("text", "json"))
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("roots", help="list the positive roots")
    _add_common(sp, weight=False, prime=False, fmt=("text", "json"))
    sp.set_defaults(func=cmd_roots)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except Indeterminate as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except RegimeError as exc:
        print(f"out of regime: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (UsageError, CartanError, UnsupportedMode, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        # nondominant weights and similar bad input
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
