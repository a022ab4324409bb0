"""
Substitution rules and non-adjacent substitution masks

Every boundary slope continued fraction of p/q is obtained from the simple
continued fraction by substituting at a set of pairwise non-adjacent term
positions. Each substitution rewrites one term into a block of alternating
2s and keeps the value of the fraction unchanged.
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterable, List, Set, Tuple, Any, Union

import structlog

from services.cf_core import ContinuedFraction, SimpleCF, from_list
from services.error_handler import InvalidMask, PositionOutOfRange, SideConditionViolated

logger = structlog.get_logger(__name__)


class SubstitutionRule(Enum):
    POSITIVE_EVEN = 1
    NEGATIVE_EVEN = 2
    POSITIVE_ODD = 3
    NEGATIVE_ODD = 4


@dataclass(frozen=True)
class SubstitutionMask:
    bits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise InvalidMask(f"Mask bits must be 0 or 1: {self.bits}")
        if any(a == b == 1 for a, b in zip(self.bits, self.bits[1:])):
            raise InvalidMask(f"Mask {self} has adjacent substitutions")

    @classmethod
    def from_string(cls, text: str) -> "SubstitutionMask":
        return cls(tuple(int(ch) for ch in text))

    @property
    def positions(self) -> List[int]:
        return [i for i, b in enumerate(self.bits) if b]

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class CandidateCF:
    cf: ContinuedFraction
    mask: SubstitutionMask
    is_boundary: bool
    # other masks that produced the same terms
    duplicate_masks: Tuple[SubstitutionMask, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cf": self.cf.to_list(),
            "mask": str(self.mask),
            "is_boundary": self.is_boundary,
            "duplicate_masks": [str(m) for m in self.duplicate_masks],
        }


def enumerate_masks(n: int) -> List[SubstitutionMask]:
    """All 0/1 masks of length n+1 with no adjacent 1s, lexicographic"""
    if n < 0:
        raise PositionOutOfRange(f"Mask index must be nonnegative, got {n}")

    # sequences of length L: 0 + (length L-1) or 10 + (length L-2)
    by_length: List[List[Tuple[int, ...]]] = [[()], [(0,), (1,)]]
    for length in range(2, n + 2):
        by_length.append([(0,) + s for s in by_length[length - 1]] +
                         [(1, 0) + s for s in by_length[length - 2]])
    return [SubstitutionMask(bits) for bits in by_length[n + 1]]


def rule_for(term: int) -> SubstitutionRule:
    if term > 0:
        return SubstitutionRule.POSITIVE_EVEN if term % 2 == 0 else SubstitutionRule.POSITIVE_ODD
    if term < 0:
        return SubstitutionRule.NEGATIVE_EVEN if term % 2 == 0 else SubstitutionRule.NEGATIVE_ODD
    raise SideConditionViolated("Zero is not a partial quotient")


def apply_substitution(cf: ContinuedFraction, pos: int) -> ContinuedFraction:
    """Substitute at term position pos (0 is the first partial quotient).

    The entry before the term (the integral component when pos == 0) moves by
    one, the term becomes a block of alternating 2s, and the successor is
    adjusted. Rules 3 and 4 also negate everything after the successor.
    """
    if not 0 <= pos < len(cf.terms):
        raise PositionOutOfRange(f"Position {pos} does not index a term of {cf}",
                                 details={"cf": cf.to_list(), "pos": pos})

    values = cf.to_list()
    j = pos + 1
    term, pred, rest = values[j], values[j - 1], values[j + 1:]
    rule = rule_for(term)

    if rule is SubstitutionRule.POSITIVE_EVEN:
        half = term // 2
        block = [-2, 2] * (half - 1) + [-2]
        pred += 1
        tail = [rest[0] + 1, *rest[1:]] if rest else []
    elif rule is SubstitutionRule.NEGATIVE_EVEN:
        half = -term // 2
        block = [2, -2] * (half - 1) + [2]
        pred -= 1
        tail = [rest[0] - 1, *rest[1:]] if rest else []
    elif rule is SubstitutionRule.POSITIVE_ODD:
        block = [-2, 2] * ((term - 1) // 2)
        pred += 1
        tail = [-rest[0] - 1, *(-t for t in rest[1:])] if rest else []
    else:
        block = [2, -2] * ((-term - 1) // 2)
        pred -= 1
        tail = [-rest[0] + 1, *(-t for t in rest[1:])] if rest else []

    if tail and tail[0] == 0:
        raise SideConditionViolated(
            f"Rule {rule.value} at position {pos} of {cf} turns the successor into 0",
            details={"cf": values, "pos": pos, "rule": rule.value})
    if pred == 0 and j - 1 >= 1:
        raise SideConditionViolated(
            f"Rule {rule.value} at position {pos} of {cf} turns the predecessor into 0",
            details={"cf": values, "pos": pos, "rule": rule.value})

    return from_list(values[:j - 1] + [pred] + block + tail)


def apply_positions(source: Union[SimpleCF, ContinuedFraction],
                    positions: Iterable[int]) -> ContinuedFraction:
    """Substitute left to right at ORIGINAL term positions (adjacency allowed)"""
    cf = source.as_cf() if isinstance(source, SimpleCF) else source
    original_length = len(cf.terms)
    # each substitution grows the running fraction by len(block) - 1
    shift = 0
    for k in sorted(set(positions)):
        if not 0 <= k < original_length:
            raise PositionOutOfRange(f"Position {k} does not index a term of {source}",
                                     details={"pos": k, "terms": original_length})
        before = len(cf.terms)
        cf = apply_substitution(cf, k + shift)
        shift += len(cf.terms) - before
    return cf


def apply_mask(s: SimpleCF, mask: SubstitutionMask) -> CandidateCF:
    if len(mask.bits) != len(s.terms):
        raise InvalidMask(f"Mask {mask} has {len(mask.bits)} bits but {s} has {len(s.terms)} terms",
                          details={"mask": str(mask), "terms": list(s.terms)})
    cf = apply_positions(s, mask.positions)
    return CandidateCF(cf=cf, mask=mask, is_boundary=cf.is_boundary)


def candidate_cfs(s: SimpleCF) -> List[CandidateCF]:
    """One candidate per non-adjacent mask; colliding masks are merged"""
    by_terms: Dict[Tuple[int, ...], CandidateCF] = {}
    for mask in enumerate_masks(s.n):
        try:
            candidate = apply_mask(s, mask)
        except SideConditionViolated as e:
            logger.warning("mask_skipped", simple=str(s), mask=str(mask), reason=e.message)
            continue

        key = tuple(candidate.cf.to_list())
        if key in by_terms:
            first = by_terms[key]
            by_terms[key] = replace(first, duplicate_masks=first.duplicate_masks + (mask,))
        else:
            by_terms[key] = candidate

    candidates = list(by_terms.values())
    logger.debug("candidates_generated", simple=str(s), masks=len(candidates),
                 boundary=sum(c.is_boundary for c in candidates))
    return candidates


def boundary_cfs(s: SimpleCF) -> Set[ContinuedFraction]:
    return {c.cf for c in candidate_cfs(s) if c.is_boundary}


def extreme_masks(n: int) -> Tuple[SubstitutionMask, SubstitutionMask]:
    """Masks at every even position (minimum slope) and every odd position (maximum)"""
    length = n + 1
    minimum = SubstitutionMask(tuple(1 if i % 2 == 0 else 0 for i in range(length)))
    maximum = SubstitutionMask(tuple(1 if i % 2 == 1 else 0 for i in range(length)))
    return minimum, maximum
