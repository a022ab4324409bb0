import re
from fractions import Fraction

from services.error_handler import OutOfRange, ParseError

_FRACTION_RE = re.compile(r"^\s*(-?\d+)\s*/\s*(-?\d+)\s*$")


def parse_fraction(text: str) -> Fraction:
    """Read "p/q" with 0 < p < q and gcd(p, q) = 1"""
    match = _FRACTION_RE.match(text or "")
    if not match:
        raise ParseError(f"Malformed fraction {text!r}; expected p/q", details={"text": text})

    p, q = int(match.group(1)), int(match.group(2))
    if q == 0:
        raise ParseError(f"Zero denominator in {text!r}", details={"text": text})
    if not 0 < p < q:
        raise OutOfRange(f"{p}/{q} is outside 0 < p/q < 1", details={"p": p, "q": q})

    value = Fraction(p, q)
    if value.numerator != p:
        raise ParseError(f"{p}/{q} is not reduced; use {value}", details={"text": text})
    return value


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"
