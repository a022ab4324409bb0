"""
Exact continued fractions for 2-bridge knot labels

A continued fraction [c, b0, b1, ..., bm] is c + 1/(b0 + 1/(b1 + ... + 1/bm)).
c is the integral component, the b's are partial quotients (terms).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Dict, List, Sequence, Tuple, Any

from services.error_handler import (
    InputError,
    InvalidConway,
    NotInvertible,
    OutOfRange,
    UndefinedCF,
)

Rational = Fraction


@dataclass(frozen=True)
class ContinuedFraction:
    integral: int
    terms: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if any(t == 0 for t in self.terms):
            raise InputError(f"Partial quotients must be nonzero: {list(self.terms)}",
                             error_code="ZERO_TERM", details={"terms": list(self.terms)})

    def to_list(self) -> List[int]:
        return [self.integral, *self.terms]

    @property
    def is_boundary(self) -> bool:
        """Every partial quotient is at least two in absolute value"""
        return all(abs(t) >= 2 for t in self.terms)

    @property
    def all_even(self) -> bool:
        return all(t % 2 == 0 for t in self.terms)

    def __str__(self) -> str:
        return "[" + ", ".join(str(v) for v in self.to_list()) + "]"

    def to_dict(self) -> Dict[str, Any]:
        return {"integral": self.integral, "terms": list(self.terms)}


@dataclass(frozen=True)
class SimpleCF:
    """[0, a0, ..., an] with every ai >= 1 and an >= 2"""
    terms: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if not self.terms:
            raise OutOfRange("A simple continued fraction needs at least one term")
        if any(t < 1 for t in self.terms) or self.terms[-1] < 2:
            raise OutOfRange(f"Not a simple continued fraction: {list(self.terms)}",
                             details={"terms": list(self.terms)})

    @property
    def n(self) -> int:
        """Index of the last term"""
        return len(self.terms) - 1

    def as_cf(self) -> ContinuedFraction:
        return ContinuedFraction(0, self.terms)

    def __str__(self) -> str:
        return str(self.as_cf())

    def to_dict(self) -> Dict[str, Any]:
        return {"terms": list(self.terms), "n": self.n}


def from_list(values: Sequence[int]) -> ContinuedFraction:
    """Build a continued fraction from the flat list [c, b0, ..., bm]"""
    if len(values) == 0:
        raise InputError("A continued fraction needs an integral component", error_code="EMPTY_CF")
    return ContinuedFraction(int(values[0]), tuple(values[1:]))


def eval_cf(cf: ContinuedFraction) -> Rational:
    """Evaluate innermost-first; raises UndefinedCF when some tail is zero"""
    if not cf.terms:
        return Fraction(cf.integral)

    value = Fraction(cf.terms[-1])
    for depth in range(len(cf.terms) - 2, -1, -1):
        if value == 0:
            raise UndefinedCF(f"{cf} is not defined as a rational number",
                              details={"cf": cf.to_list(), "zero_tail_at": depth + 1})
        value = cf.terms[depth] + 1 / value

    if value == 0:
        raise UndefinedCF(f"{cf} is not defined as a rational number",
                          details={"cf": cf.to_list(), "zero_tail_at": 0})
    return cf.integral + 1 / value


def expand_repeat(prefix: Sequence[int], pattern: Sequence[int], count: int,
                  suffix: Sequence[int] = ()) -> ContinuedFraction:
    """prefix ++ pattern^count ++ suffix as one flat continued fraction.

    The first entry is the integral component; when everything is empty the
    result is [0].
    """
    if count < 0:
        raise OutOfRange(f"Repeat count must be nonnegative, got {count}")
    if any(t == 0 for t in pattern):
        raise InputError("Repeated pattern must not contain zero", error_code="ZERO_TERM")
    values = [*prefix, *(list(pattern) * count), *suffix]
    if not values:
        return ContinuedFraction(0)
    return from_list(values)


def _euclid_terms(p: int, q: int) -> List[int]:
    """Partial quotients of p/q for 0 < p < q by repeated floor division"""
    terms = []
    while p:
        a, rem = divmod(q, p)
        terms.append(a)
        q, p = p, rem
    # [..., a, 1] -> [..., a+1]
    if len(terms) > 1 and terms[-1] == 1:
        terms[-2] += terms.pop()
    return terms


def simple_cf(r: Rational) -> SimpleCF:
    """The unique expansion [0, a0, ..., an] with ai >= 1 and an >= 2"""
    r = Fraction(r)
    if not 0 < r < 1:
        raise OutOfRange(f"Simple continued fractions are defined here for 0 < r < 1, got {r}",
                         details={"fraction": str(r)})
    return SimpleCF(tuple(_euclid_terms(r.numerator, r.denominator)))


def cf_terms(r: Rational, nonzero_head: bool = False) -> ContinuedFraction:
    """Floor-based expansion of any rational.

    With nonzero_head the integral component is never 0, so the result can be
    spliced after other terms without creating a zero partial quotient.
    """
    r = Fraction(r)
    head = floor(r)
    frac = r - head
    if frac == 0:
        if nonzero_head and head == 0:
            raise OutOfRange("Zero has no expansion with a nonzero head")
        return ContinuedFraction(head)
    if nonzero_head and head == 0:
        complement = 1 - r
        tail = _euclid_terms(complement.numerator, complement.denominator)
        return ContinuedFraction(1, tuple(-t for t in tail))
    return ContinuedFraction(head, tuple(_euclid_terms(frac.numerator, frac.denominator)))


def append_tail(prefix: Sequence[int], k: Rational) -> ContinuedFraction:
    """[b0, ..., bm, k] for a nonzero rational tail k"""
    k = Fraction(k)
    if k == 0:
        raise OutOfRange("Tail value must be nonzero")
    tail = cf_terms(k, nonzero_head=bool(prefix))
    return from_list([*prefix, *tail.to_list()])


def subexpansions(cf: ContinuedFraction) -> List[Rational]:
    """[0, b_k, ..., b_m] for every k, from one innermost-first pass"""
    values: List[Rational] = []
    tail = None
    for k in range(len(cf.terms) - 1, -1, -1):
        tail = Fraction(cf.terms[k]) if tail is None else cf.terms[k] + values[-1]
        if tail == 0:
            raise UndefinedCF(f"{cf} is not defined as a rational number",
                              details={"cf": cf.to_list(), "zero_tail_at": k})
        values.append(1 / tail)
    return values[::-1]


def crossing_number(s: SimpleCF) -> int:
    return sum(s.terms)


def cf_from_conway(conway: Sequence[int]) -> SimpleCF:
    """Conway notation a0 a1 ... an has continued fraction [0, an, ..., a0]"""
    if len(conway) == 0:
        raise InvalidConway("Conway notation is empty")
    if any(int(a) < 1 for a in conway):
        raise InvalidConway(f"Conway notation entries must be positive: {list(conway)}",
                            details={"conway": list(conway)})
    terms = [int(a) for a in reversed(conway)]
    if len(terms) > 1 and terms[-1] == 1:
        terms[-2] += terms.pop()
    if terms == [1]:
        raise InvalidConway("Conway notation 1 is the unknot", details={"conway": list(conway)})
    return SimpleCF(tuple(terms))


def conway_from_cf(s: SimpleCF) -> Tuple[int, ...]:
    return tuple(reversed(s.terms))


def canonicalize(r: Rational) -> Rational:
    """Smallest numerator in {p, p^-1 mod q}.

    K(p/q) and K(p'/q) are the same knot iff p' = p^(+-1) mod q. Mirrors
    (-p/q) are not identified.
    """
    r = Fraction(r)
    if not 0 < r < 1:
        raise OutOfRange(f"Canonical form is defined for 0 < p/q < 1, got {r}",
                         details={"fraction": str(r)})
    p, q = r.numerator, r.denominator
    try:
        inverse = pow(p, -1, q)
    except ValueError as e:
        raise NotInvertible(f"{p} is not invertible modulo {q}") from e
    return Fraction(min(p, inverse), q)
