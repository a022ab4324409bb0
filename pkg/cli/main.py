import argparse
import os
import sys
from typing import List, Literal, Optional, TextIO, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel

from services.btree import build_tree, to_dot
from services.cf_core import canonicalize
from services.error_handler import (
    EXIT_ASSERTION,
    EXIT_OK,
    EXIT_USAGE,
    ParseError,
    SlopeDiameterError,
    configure_logging,
    error_handler,
)
from services.slopes import SlopeReport, Theorem1Status, analyze
from services.sweep import check_rows, run_sweep, write_csv
from utils.helpers import format_fraction, parse_fraction

load_dotenv()


# Pydantic models
class SignCountsModel(BaseModel):
    b_plus: int
    b_minus: int


class SlopeReportModel(BaseModel):
    fraction: str
    canonical: str
    simple: List[int]
    n: int
    conway: List[int]
    crossing: int
    boundary_cfs: List[List[int]]
    seifert: Optional[List[int]]
    seifert_status: Literal["unique", "ambiguous", "missing"]
    seifert_counts: SignCountsModel
    candidate_slopes: List[int]
    slopes: List[int]
    duplicate_slopes: int
    diameter: int
    extremes_closed_form: Tuple[int, int]
    extremes_enumerated: Tuple[int, int]
    extremes_by_substitution: Tuple[int, int]
    theorem1: Literal["pass", "fail", "n/a"]
    theorem1_holds: bool
    corollary1_holds: bool
    fib_bound: int
    is_knot: bool
    engines_agree: bool


def report_to_json(report: SlopeReport) -> str:
    return SlopeReportModel.model_validate(report.to_dict()).model_dump_json(indent=2)


def report_to_text(report: SlopeReport) -> str:
    model = SlopeReportModel.model_validate(report.to_dict())
    lines = []
    for key, value in model.model_dump().items():
        if isinstance(value, dict):
            value = " ".join(f"{k}={v}" for k, v in value.items())
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def default_jobs() -> int:
    raw = os.getenv("SLOPE_DIAMETER_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ParseError(f"SLOPE_DIAMETER_JOBS must be an integer, got {raw!r}")


def cmd_analyze(fraction: str, fmt: str = "json", out: Optional[TextIO] = None) -> int:
    """Print the full slope report; exit 2 if a checked claim fails"""
    report = analyze(parse_fraction(fraction))
    text = report_to_json(report) if fmt == "json" else report_to_text(report)
    print(text, file=out or sys.stdout)

    if report.theorem1 is Theorem1Status.FAIL or not report.corollary1_holds:
        return EXIT_ASSERTION
    return EXIT_OK


def cmd_sweep(max_q: int, knots_only: bool = False, canonical_classes: bool = False,
              out: Optional[str] = None, jobs: int = 1, stream: Optional[TextIO] = None) -> int:
    """Write the sweep CSV and a one-line summary"""
    stream = stream or sys.stdout
    rows, summary = run_sweep(max_q, knots_only=knots_only,
                              canonical_classes=canonical_classes, jobs=jobs)
    if out:
        write_csv(rows, out)
    else:
        write_csv(rows, stream)
    # keep stdout pure CSV when no --out is given
    print(summary.line(), file=stream if out else sys.stderr)

    check_rows(rows)
    return EXIT_OK


def cmd_tree(fraction: str, out: Optional[str] = None, ascii_only: bool = False,
             stream: Optional[TextIO] = None) -> int:
    dot = to_dot(build_tree(parse_fraction(fraction)), ascii_only=ascii_only)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(dot)
    else:
        (stream or sys.stdout).write(dot)
    return EXIT_OK


def cmd_canonicalize(fraction: str, out: Optional[TextIO] = None) -> int:
    print(format_fraction(canonicalize(parse_fraction(fraction))), file=out or sys.stdout)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1; exit 2 is reserved for mathematical failures"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slope-diameter",
                     description="Boundary slopes, diameter and crossing number of 2-bridge knots K(p/q).")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_analyze = commands.add_parser("analyze", help="full slope report for one fraction")
    p_analyze.add_argument("fraction", help="p/q with 0 < p < q, reduced")
    p_analyze.add_argument("--format", choices=["json", "text"], default="json")

    p_sweep = commands.add_parser("sweep", help="check D = 2c over all fractions up to --max-q")
    p_sweep.add_argument("--max-q", type=int, required=True)
    p_sweep.add_argument("--knots-only", action="store_true", help="odd denominators only")
    p_sweep.add_argument("--canonical-classes", action="store_true",
                         help="one row per class {p, p^-1 mod q}")
    p_sweep.add_argument("--out", help="CSV path (default: stdout)")
    p_sweep.add_argument("--jobs", type=int, default=None,
                         help="worker processes (default: $SLOPE_DIAMETER_JOBS or 1)")

    p_tree = commands.add_parser("tree", help="DOT rendering of the boundary slope binary tree")
    p_tree.add_argument("fraction")
    p_tree.add_argument("--out", help="DOT path (default: stdout)")
    p_tree.add_argument("--ascii", action="store_true", help="label dead leaves DNE")

    p_canon = commands.add_parser("canonicalize", help="smallest p' with p' = p^(+-1) mod q")
    p_canon.add_argument("fraction")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)

    try:
        if args.command == "analyze":
            return cmd_analyze(args.fraction, args.format)
        if args.command == "sweep":
            jobs = args.jobs if args.jobs is not None else default_jobs()
            return cmd_sweep(args.max_q, args.knots_only, args.canonical_classes, args.out, jobs)
        if args.command == "tree":
            return cmd_tree(args.fraction, args.out, args.ascii)
        return cmd_canonicalize(args.fraction)
    except (SlopeDiameterError, OSError) as e:
        result = error_handler.handle_error(e, context=args.command)
        print(f"error: {result['user_message']} ({result['technical_details']})", file=sys.stderr)
        return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
