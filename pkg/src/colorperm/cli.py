"""Command-line surface: stats, poly, verify, and enumerate subcommands."""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
from pathlib import Path
from typing import Optional

from .core import Signature, parse_element
from .enumeration import (
    BudgetExceededError,
    CSV_HEADER,
    DEFAULT_BUDGET,
    element_csv_row,
    element_json_line,
    enumerate_derangements,
    enumerate_group,
    enumerate_involutions,
)
from .formulas import FORMULA_IDS, oracle_polynomial
from .harness import (
    EXIT_BUDGET,
    EXIT_USAGE,
    claims_csv_rows,
    resolve_claims,
    verify,
)
from .poly import VARIABLES
from . import statistics as _st


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with status 3."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="largest set that may be enumerated (default %(default)s elements)",
    )
    parser.add_argument(
        "--threads", type=int, default=1, help="parallel fold width for verify"
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="seed recorded for sampled property checks"
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="colorperm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="statistics of one element as JSON")
    p_stats.add_argument("--signature", required=True, help="comma-separated palette sizes, e.g. 3,2")
    p_stats.add_argument("-n", type=int, required=True, dest="n")
    p_stats.add_argument("--element", required=True, help='window form, e.g. "3^(0,0) 1^(2,1) 2^(0,1)"')
    _add_common(p_stats)

    p_poly = sub.add_parser("poly", help="enumeration-oracle polynomial, optionally specialized")
    p_poly.add_argument("--signature", required=True)
    p_poly.add_argument("-n", type=int, required=True, dest="n")
    p_poly.add_argument("--kind", choices=["full", "derangement", "involution"], required=True)
    p_poly.add_argument("--subst", default=None, help="comma-separated bindings, e.g. t=1,s=-1")
    _add_common(p_poly)

    p_verify = sub.add_parser("verify", help="compare formulas against the enumeration oracle")
    p_verify.add_argument(
        "--signature-list",
        default=None,
        help="semicolon-separated signatures, e.g. '1;2;3,2' (default: the standard grid)",
    )
    p_verify.add_argument("--max-n", type=int, default=3, help="largest n per listed signature")
    p_verify.add_argument(
        "--claims",
        default=None,
        help=f"comma-separated claim ids (default: all of {', '.join(FORMULA_IDS)})",
    )
    p_verify.add_argument("--json", default=None, metavar="PATH", help="write the JSON report here")
    p_verify.add_argument("--csv", default=None, metavar="PATH", help="write the claim table here")
    p_verify.add_argument(
        "--figures", default=None, metavar="DIR", help="render report figures into this directory"
    )
    p_verify.add_argument(
        "--timings", action="store_true", help="record wall-clock timings (breaks byte determinism)"
    )
    _add_common(p_verify)

    p_enum = sub.add_parser("enumerate", help="stream elements with statistics and classes")
    p_enum.add_argument("--signature", required=True)
    p_enum.add_argument("-n", type=int, required=True, dest="n")
    p_enum.add_argument(
        "--class",
        dest="which",
        choices=["all", "derangements", "involutions"],
        default="all",
    )
    p_enum.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p_enum.add_argument("--limit", type=int, default=None)
    _add_common(p_enum)

    return parser


def _parse_subst(text: Optional[str]) -> dict[str, int]:
    if not text:
        return {}
    bindings = {}
    for piece in text.split(","):
        name, _, value = piece.partition("=")
        name = name.strip()
        if name not in VARIABLES:
            raise ValueError(f"unknown variable {name!r} in --subst")
        bindings[name] = int(value)
    return bindings


def _cmd_stats(args) -> int:
    sig = Signature.parse(args.signature)
    el = parse_element(sig, args.element)
    if el.n != args.n:
        print(f"colorperm stats: element has {el.n} window entries, expected n={args.n}",
              file=sys.stderr)
        return EXIT_USAGE
    record = _st.stats(el)
    print(json.dumps(record.to_json_dict(), separators=(",", ":")))
    return 0


def _cmd_poly(args) -> int:
    sig = Signature.parse(args.signature)
    poly = oracle_polynomial(sig, args.n, args.kind, budget=args.budget)
    bindings = _parse_subst(args.subst)
    if bindings:
        poly = poly.substitute(bindings)
    print(str(poly))
    return 0


def _cmd_verify(args) -> int:
    grid = None
    if args.signature_list is not None:
        grid = []
        for text in args.signature_list.split(";"):
            sig = Signature.parse(text.strip())
            for n in range(1, args.max_n + 1):
                grid.append((sig, n))
    claims = None
    if args.claims is not None:
        claims = [piece.strip() for piece in args.claims.split(",") if piece.strip()]
    report = verify(
        grid=grid,
        claims=claims,
        budget=args.budget,
        threads=args.threads,
        seed=args.seed,
        timings=args.timings,
    )
    for row in report.claims:
        label = row["formula_id"] + (f"[{row['variant']}]" if row["variant"] else "")
        status = row["status"]
        if status == "mismatch" and not row["hard"]:
            status = "audit: mismatch"
        print(f"{label:32s} {row['signature']:>10s} n={row['n']}: {status}")
    summary = report.summary
    print(
        f"claims={summary['claims']} match={summary['match']} "
        f"hard_mismatch={summary['hard_mismatch']} "
        f"audit_mismatch={summary['audit_mismatch']} skipped={summary['skipped']}"
    )
    if args.json:
        Path(args.json).write_bytes(report.to_json_bytes())
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerows(claims_csv_rows(report))
    if args.figures:
        from .plotting import render_report_figures

        paths = render_report_figures(report.to_json_obj(), Path(args.figures))
        for path in paths:
            print(f"figure: {path}")
    return report.exit_code


def _cmd_enumerate(args) -> int:
    sig = Signature.parse(args.signature)
    streams = {
        "all": enumerate_group,
        "derangements": enumerate_derangements,
        "involutions": enumerate_involutions,
    }
    stream = streams[args.which](sig, args.n, budget=args.budget)
    if args.limit is not None:
        stream = itertools.islice(stream, args.limit)
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for el in stream:
            writer.writerow(element_csv_row(el))
    else:
        for el in stream:
            print(element_json_line(el))
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    handlers = {
        "stats": _cmd_stats,
        "poly": _cmd_poly,
        "verify": _cmd_verify,
        "enumerate": _cmd_enumerate,
    }
    try:
        return handlers[args.command](args)
    except BudgetExceededError as err:
        print(f"colorperm: budget refusal: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as err:
        print(f"colorperm: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
