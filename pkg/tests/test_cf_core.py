from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis.strategies import integers, lists

from conftest import reduced_fractions
from services.cf_core import (
    ContinuedFraction,
    SimpleCF,
    append_tail,
    canonicalize,
    cf_from_conway,
    cf_terms,
    conway_from_cf,
    crossing_number,
    eval_cf,
    expand_repeat,
    from_list,
    simple_cf,
    subexpansions,
)
from services.error_handler import (
    InputError,
    InvalidConway,
    OutOfRange,
    UndefinedCF,
)


@pytest.mark.parametrize("values, expected", [
    ([0, 3, 2], Fraction(2, 7)),
    ([5], Fraction(5)),
    ([1, -2, 2, -3], Fraction(2, 7)),
    ([0, 4, -2], Fraction(2, 7)),
    ([0, 2, 2], Fraction(2, 5)),
])
def test_eval_cf(values, expected):
    assert eval_cf(from_list(values)) == expected


def test_eval_cf_zero_tail():
    with pytest.raises(UndefinedCF) as exc:
        eval_cf(from_list([0, 2, -1, 2]))
    assert exc.value.details["zero_tail_at"] == 0


def test_zero_term_rejected():
    with pytest.raises(InputError):
        ContinuedFraction(0, (3, 0, 2))
    with pytest.raises(InputError):
        from_list([])


def test_cf_str_and_flags():
    cf = from_list([0, 4, -2])
    assert str(cf) == "[0, 4, -2]"
    assert cf.is_boundary and cf.all_even
    assert not from_list([0, 1, 2]).is_boundary
    assert from_list([7]).to_list() == [7]


@pytest.mark.parametrize("prefix, pattern, count, suffix, expected", [
    ([0], (-2, 2), 2, [], [0, -2, 2, -2, 2]),
    ([0], (-2, 2), 0, [2], [0, 2]),
    ([], (7,), 1, [], [7]),
])
def test_expand_repeat(prefix, pattern, count, suffix, expected):
    assert expand_repeat(prefix, pattern, count, suffix).to_list() == expected


def test_expand_repeat_rejects_negative_count():
    with pytest.raises(OutOfRange):
        expand_repeat([0], (2,), -1)


def test_expand_repeat_of_nothing_is_zero():
    assert expand_repeat([], (2,), 0).to_list() == [0]
    assert expand_repeat([], (), 3).to_list() == [0]


@pytest.mark.parametrize("r, terms", [
    (Fraction(2, 7), (3, 2)),
    (Fraction(2, 5), (2, 2)),
    (Fraction(1, 2), (2,)),
    (Fraction(7, 16), (2, 3, 2)),
])
def test_simple_cf(r, terms):
    s = simple_cf(r)
    assert s.terms == terms
    assert s.n == len(terms) - 1


@pytest.mark.parametrize("r", [Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-1, 3)])
def test_simple_cf_out_of_range(r):
    with pytest.raises(OutOfRange):
        simple_cf(r)


def test_simple_cf_type_invariants():
    with pytest.raises(OutOfRange):
        SimpleCF((3, 1))
    with pytest.raises(OutOfRange):
        SimpleCF((2, 0, 2))
    with pytest.raises(OutOfRange):
        SimpleCF(())


def test_simple_cf_round_trip_q500():
    for r in reduced_fractions(500):
        s = simple_cf(r)
        assert all(a >= 1 for a in s.terms) and s.terms[-1] >= 2
        assert eval_cf(s.as_cf()) == r


@pytest.mark.parametrize("terms, crossing", [((3, 2), 5), ((2, 2), 4), ((2,), 2)])
def test_crossing_number(terms, crossing):
    assert crossing_number(SimpleCF(terms)) == crossing


@pytest.mark.parametrize("conway, terms", [
    ([2, 3], (3, 2)),
    ([3], (3,)),
    ([2, 1, 3], (3, 1, 2)),
    ([1, 3], (4,)),
])
def test_cf_from_conway(conway, terms):
    assert cf_from_conway(conway).terms == terms


@pytest.mark.parametrize("conway", [[], [0, 2], [2, -1], [1]])
def test_cf_from_conway_invalid(conway):
    with pytest.raises(InvalidConway):
        cf_from_conway(conway)


@given(lists(integers(min_value=1, max_value=30), min_size=1, max_size=8))
def test_conway_round_trip(conway):
    if conway[0] < 2:
        conway[0] += 1
    assert conway_from_cf(cf_from_conway(conway)) == tuple(conway)


@pytest.mark.parametrize("r, expected", [
    (Fraction(4, 7), Fraction(2, 7)),
    (Fraction(2, 7), Fraction(2, 7)),
    (Fraction(3, 5), Fraction(2, 5)),
    (Fraction(1, 2), Fraction(1, 2)),
])
def test_canonicalize(r, expected):
    assert canonicalize(r) == expected


@given(integers(min_value=2, max_value=400), integers(min_value=1, max_value=399))
def test_canonicalize_orbit(q, p):
    r = Fraction(p % q or 1, q)
    if r.denominator != q:
        return
    p = r.numerator
    c = canonicalize(r)
    assert canonicalize(c) == c
    assert canonicalize(Fraction(pow(p, -1, q), q)) == c
    assert c <= r


@pytest.mark.parametrize("r", [Fraction(2, 7), Fraction(-5, 3), Fraction(3), Fraction(-1, 4)])
def test_cf_terms_evaluates_back(r):
    assert eval_cf(cf_terms(r)) == r
    assert eval_cf(cf_terms(r, nonzero_head=True)) == r
    assert cf_terms(r, nonzero_head=True).integral != 0


def test_cf_terms_zero_with_nonzero_head():
    with pytest.raises(OutOfRange):
        cf_terms(Fraction(0), nonzero_head=True)


def test_append_tail():
    assert append_tail([], Fraction(2, 7)).to_list() == [0, 3, 2]
    cf = append_tail([-2, 2], Fraction(1, 3))
    assert 0 not in cf.terms
    with pytest.raises(OutOfRange):
        append_tail([2], 0)


def test_subexpansions():
    assert subexpansions(from_list([0, 3, 2])) == [Fraction(2, 7), Fraction(1, 2)]
    assert subexpansions(from_list([1, -2, 2, -3])) == [Fraction(-5, 7), Fraction(3, 5), Fraction(-1, 3)]
