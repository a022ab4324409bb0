"""
Exhaustive sweep over reduced fractions 0 < p/q <= max_q, one row per fraction
"""
from dataclasses import dataclass, asdict
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Tuple

import pandas as pd
import structlog

from services.cf_core import canonicalize
from services.error_handler import OutOfRange, TheoremViolation
from services.slopes import Theorem1Status, analyze
from services.task_queue import TaskQueue

logger = structlog.get_logger(__name__)

CSV_COLUMNS = [
    "p", "q", "n", "crossing", "diameter", "num_slopes",
    "fib_bound", "theorem1", "engines_agree", "is_knot",
]


@dataclass(frozen=True)
class SweepRow:
    p: int
    q: int
    n: int
    crossing: int
    diameter: int
    num_slopes: int
    fib_bound: int
    theorem1: str
    engines_agree: bool
    is_knot: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class SweepSummary:
    rows: int
    knots: int
    passed: int
    failed: int
    not_applicable: int
    max_slopes: int

    def line(self) -> str:
        return (f"rows={self.rows} knots={self.knots} pass={self.passed} fail={self.failed} "
                f"n/a={self.not_applicable} max_slopes={self.max_slopes}")


def sweep_fractions(max_q: int, knots_only: bool = False,
                    canonical_classes: bool = False) -> List[Fraction]:
    """Reduced 0 < p/q with q <= max_q, ordered by (q, p)"""
    if max_q < 2:
        raise OutOfRange(f"max_q must be at least 2, got {max_q}")

    fractions = []
    for q in range(2, max_q + 1):
        if knots_only and q % 2 == 0:
            continue
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            value = Fraction(p, q)
            if canonical_classes and canonicalize(value) != value:
                continue
            fractions.append(value)
    return fractions


def sweep_row(fraction: Fraction) -> SweepRow:
    report = analyze(fraction)
    return SweepRow(
        p=fraction.numerator,
        q=fraction.denominator,
        n=report.simple.n,
        crossing=report.crossing,
        diameter=report.diameter,
        num_slopes=len(report.slopes),
        fib_bound=report.fib_bound,
        theorem1=report.theorem1.value,
        engines_agree=report.engines_agree,
        is_knot=report.is_knot,
    )


def summarize(rows: List[SweepRow]) -> SweepSummary:
    return SweepSummary(
        rows=len(rows),
        knots=sum(r.is_knot for r in rows),
        passed=sum(r.theorem1 == Theorem1Status.PASS.value for r in rows),
        failed=sum(r.theorem1 == Theorem1Status.FAIL.value for r in rows),
        not_applicable=sum(r.theorem1 == Theorem1Status.NOT_APPLICABLE.value for r in rows),
        max_slopes=max((r.num_slopes for r in rows), default=0),
    )


def run_sweep(max_q: int, knots_only: bool = False, canonical_classes: bool = False,
              jobs: int = 1) -> Tuple[List[SweepRow], SweepSummary]:
    fractions = sweep_fractions(max_q, knots_only, canonical_classes)
    logger.info("sweep_started", max_q=max_q, fractions=len(fractions), jobs=jobs)

    rows = TaskQueue(max_workers=jobs).run_all(sweep_row, fractions)
    rows.sort(key=lambda r: (r.q, r.p))
    summary = summarize(rows)

    logger.info("sweep_finished", rows=summary.rows, failures=summary.failed, jobs=jobs)
    return rows, summary


def check_rows(rows: List[SweepRow]) -> None:
    """Raise TheoremViolation with a diagnostic dump when any knot row fails"""
    failing = [r for r in rows if r.theorem1 == Theorem1Status.FAIL.value]
    if not failing:
        return
    dump = [{"row": r.to_dict(), "report": analyze(Fraction(r.p, r.q)).to_dict()} for r in failing]
    for entry in dump:
        logger.error("theorem1_failed_row", **entry["row"])
    raise TheoremViolation(f"{len(failing)} knot(s) have diameter != 2 * crossing number",
                           details={"failures": dump})


def rows_to_frame(rows: List[SweepRow]) -> pd.DataFrame:
    frame = pd.DataFrame([r.to_dict() for r in rows], columns=CSV_COLUMNS)
    for column in ("engines_agree", "is_knot"):
        frame[column] = frame[column].map({True: "true", False: "false"})
    return frame


def write_csv(rows: List[SweepRow], path_or_buffer) -> None:
    rows_to_frame(rows).to_csv(path_or_buffer, index=False)
