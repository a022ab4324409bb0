"""
Boundary slopes of 2-bridge knots

Each boundary slope continued fraction is pattern-matched against [+ - + - ...].
b+ counts matching terms and b- the rest. The all-even expansion (Seifert
surface) has slope 0, and any other expansion has slope
2((b+ - b-) - (b0+ - b0-)).
"""
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Any

import structlog

from services.btree import build_tree, check_subexpansions, leaves
from services.cf_core import (
    ContinuedFraction,
    Rational,
    SimpleCF,
    canonicalize,
    conway_from_cf,
    crossing_number,
    simple_cf,
)
from services.error_handler import EnginesDisagree, SeifertNotFound, SeifertNotUnique
from services.subst import apply_mask, candidate_cfs, extreme_masks

logger = structlog.get_logger(__name__)


class Theorem1Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "n/a"


class SeifertStatus(Enum):
    UNIQUE = "unique"
    AMBIGUOUS = "ambiguous"
    MISSING = "missing"


@dataclass(frozen=True)
class SignCounts:
    b_plus: int
    b_minus: int

    @property
    def difference(self) -> int:
        return self.b_plus - self.b_minus

    def to_dict(self) -> Dict[str, int]:
        return {"b_plus": self.b_plus, "b_minus": self.b_minus}


@dataclass(frozen=True)
class SlopeReport:
    fraction: Rational
    canonical: Rational
    simple: SimpleCF
    conway: Tuple[int, ...]
    crossing: int
    boundary_cfs: Tuple[ContinuedFraction, ...]
    seifert: Optional[ContinuedFraction]
    seifert_status: SeifertStatus
    seifert_counts: SignCounts
    candidate_slopes: Tuple[int, ...]
    slopes: Tuple[int, ...]
    duplicate_slopes: int
    diameter: int
    extremes_closed_form: Tuple[int, int]
    extremes_enumerated: Tuple[int, int]
    extremes_by_substitution: Tuple[int, int]
    theorem1: Theorem1Status
    theorem1_holds: bool
    corollary1_holds: bool
    fib_bound: int
    is_knot: bool
    engines_agree: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "fraction": str(self.fraction),
            "canonical": str(self.canonical),
            "simple": list(self.simple.terms),
            "n": self.simple.n,
            "conway": list(self.conway),
            "crossing": self.crossing,
            "boundary_cfs": [cf.to_list() for cf in self.boundary_cfs],
            "seifert": self.seifert.to_list() if self.seifert else None,
            "seifert_status": self.seifert_status.value,
            "seifert_counts": self.seifert_counts.to_dict(),
            "candidate_slopes": list(self.candidate_slopes),
            "slopes": list(self.slopes),
            "duplicate_slopes": self.duplicate_slopes,
            "diameter": self.diameter,
            "extremes_closed_form": list(self.extremes_closed_form),
            "extremes_enumerated": list(self.extremes_enumerated),
            "extremes_by_substitution": list(self.extremes_by_substitution),
            "theorem1": self.theorem1.value,
            "theorem1_holds": self.theorem1_holds,
            "corollary1_holds": self.corollary1_holds,
            "fib_bound": self.fib_bound,
            "is_knot": self.is_knot,
            "engines_agree": self.engines_agree,
        }


def sign_counts(cf: ContinuedFraction) -> SignCounts:
    """Match term i against + for even i and - for odd i"""
    matches = sum(1 for i, t in enumerate(cf.terms) if (t > 0) == (i % 2 == 0))
    return SignCounts(b_plus=matches, b_minus=len(cf.terms) - matches)


def seifert_cf(candidates: Iterable[ContinuedFraction]) -> ContinuedFraction:
    """The unique all-even boundary slope continued fraction"""
    evens = [cf for cf in candidates if cf.all_even]
    if not evens:
        raise SeifertNotFound("No all-even boundary slope continued fraction")
    if len(evens) > 1:
        raise SeifertNotUnique(f"{len(evens)} all-even boundary slope continued fractions",
                               details={"all_even": [cf.to_list() for cf in evens]})
    return evens[0]


def slope(cf: ContinuedFraction, seifert_counts: SignCounts) -> int:
    return 2 * (sign_counts(cf).difference - seifert_counts.difference)


def fib_bound(n: int) -> int:
    """F_{n+2} with F_2 = 2, F_3 = 3: the number of masks of length n+1"""
    previous, current = 1, 2
    for _ in range(n):
        previous, current = current, previous + current
    return current


def extremes_closed_form(s: SimpleCF, seifert_counts: SignCounts) -> Tuple[int, int]:
    """Minimum and maximum slope from the simple continued fraction alone"""
    n_even = 1 if s.n % 2 == 0 else 0
    b1_minus = sum(s.terms[0::2]) - n_even
    b2_plus = sum(s.terms[1::2]) + n_even
    offset = 2 * seifert_counts.difference
    return -2 * b1_minus - offset, 2 * b2_plus - offset


def extremes_by_substitution(s: SimpleCF, seifert_counts: SignCounts) -> Tuple[int, int]:
    """Slopes of the all-even-positions and all-odd-positions substitutions"""
    low_mask, high_mask = extreme_masks(s.n)
    low = apply_mask(s, low_mask).cf
    high = apply_mask(s, high_mask).cf
    return slope(low, seifert_counts), slope(high, seifert_counts)


def diameter_closed_form(s: SimpleCF) -> int:
    low, high = extremes_closed_form(s, SignCounts(0, 0))
    return high - low


def corollary1_holds(report: SlopeReport) -> bool:
    return max(abs(b) for b in report.slopes) <= 2 * report.crossing


def _choose_seifert(boundary: List[ContinuedFraction], is_knot: bool):
    evens = [cf for cf in boundary if cf.all_even]
    if is_knot or len(evens) == 1:
        return seifert_cf(boundary), SeifertStatus.UNIQUE
    if evens:
        return evens[0], SeifertStatus.AMBIGUOUS
    return None, SeifertStatus.MISSING


def analyze(r: Rational) -> SlopeReport:
    """Run both enumerations and compute slopes, diameter and checks for 0 < r < 1"""
    r = Fraction(r)
    s = simple_cf(r)
    crossing = crossing_number(s)
    is_knot = r.denominator % 2 == 1

    boundary = [c.cf for c in candidate_cfs(s) if c.is_boundary]
    tree_leaves = leaves(build_tree(r))
    if set(boundary) != tree_leaves:
        only_tree = sorted(cf.to_list() for cf in tree_leaves - set(boundary))
        only_masks = sorted(cf.to_list() for cf in set(boundary) - tree_leaves)
        logger.error("engines_disagree", fraction=str(r), only_tree=only_tree, only_masks=only_masks)
        raise EnginesDisagree(f"Tree and substitution enumerations differ for {r}",
                              details={"fraction": str(r), "only_tree": only_tree,
                                       "only_masks": only_masks})

    for cf in boundary:
        check_subexpansions(cf)

    seifert, seifert_status = _choose_seifert(boundary, is_knot)
    if seifert_status is not SeifertStatus.UNIQUE:
        logger.info("link_seifert_diagnostic", fraction=str(r), status=seifert_status.value)
    b0 = sign_counts(seifert) if seifert is not None else SignCounts(0, 0)

    candidate_slopes = tuple(slope(cf, b0) for cf in boundary)
    slopes = tuple(sorted(set(candidate_slopes)))
    diameter = slopes[-1] - slopes[0]

    if is_knot:
        theorem1 = Theorem1Status.PASS if diameter == 2 * crossing else Theorem1Status.FAIL
    else:
        theorem1 = Theorem1Status.NOT_APPLICABLE

    report = SlopeReport(
        fraction=r,
        canonical=canonicalize(r),
        simple=s,
        conway=conway_from_cf(s),
        crossing=crossing,
        boundary_cfs=tuple(boundary),
        seifert=seifert,
        seifert_status=seifert_status,
        seifert_counts=b0,
        candidate_slopes=candidate_slopes,
        slopes=slopes,
        duplicate_slopes=len(candidate_slopes) - len(slopes),
        diameter=diameter,
        extremes_closed_form=extremes_closed_form(s, b0),
        extremes_enumerated=(slopes[0], slopes[-1]),
        extremes_by_substitution=extremes_by_substitution(s, b0),
        theorem1=theorem1,
        theorem1_holds=theorem1 is Theorem1Status.PASS,
        corollary1_holds=False,
        fib_bound=fib_bound(s.n),
        is_knot=is_knot,
        engines_agree=True,
    )
    report = replace(report, corollary1_holds=corollary1_holds(report))

    if theorem1 is Theorem1Status.FAIL:
        logger.error("theorem1_failed", fraction=str(r), diameter=diameter, crossing=crossing)
    logger.debug("analysis_complete", fraction=str(r), diameter=diameter, crossing=crossing,
                 slopes=list(slopes))
    return report
