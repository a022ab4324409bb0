import os
import sys
from fractions import Fraction
from math import gcd

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from services.slopes import analyze  # noqa: E402


def reduced_fractions(max_q, odd_only=False):
    return [Fraction(p, q)
            for q in range(2, max_q + 1) if not (odd_only and q % 2 == 0)
            for p in range(1, q) if gcd(p, q) == 1]


@pytest.fixture(scope="session")
def reports_q200():
    """analyze() for every reduced p/q with q <= 200"""
    return {r: analyze(r) for r in reduced_fractions(200)}
