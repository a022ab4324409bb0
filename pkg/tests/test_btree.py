import dataclasses
import math
import re
from fractions import Fraction

import pytest

from conftest import reduced_fractions
from services.btree import (
    DEAD_LABEL,
    DEAD_LABEL_ASCII,
    NodeKind,
    build_tree,
    check_subexpansions,
    count_leaves,
    leaf_list,
    leaves,
    to_dot,
    walk,
)
from services.cf_core import eval_cf, from_list, simple_cf
from services.error_handler import LemmaViolation, OutOfRange
from services.slopes import fib_bound
from services.subst import boundary_cfs

NODE_LINE = re.compile(r'^  n\d+ \[label="[^"]*", shape=(ellipse|box|plaintext)\];$')
EDGE_LINE = re.compile(r'^  n\d+ -> n\d+ \[label="-?\d+"\];$')


def _lists(cfs):
    return sorted(cf.to_list() for cf in cfs)


def test_tree_for_two_sevenths():
    t = build_tree(Fraction(2, 7))
    assert count_leaves(t) == (3, 2)
    assert [cf.to_list() for cf in leaf_list(t)] == [[0, 3, 2], [0, 4, -2], [1, -2, 2, -3]]
    assert [label for label, _ in t.children] == [0, 1]


@pytest.mark.parametrize("r, expected", [
    (Fraction(1, 2), [[0, 2], [1, -2]]),
    (Fraction(1, 3), [[0, 3], [1, -2, 2]]),
    (Fraction(2, 5), [[0, 2, 2], [0, 3, -2], [1, -2, 3]]),
])
def test_leaves(r, expected):
    assert _lists(leaves(build_tree(r))) == expected


def test_nodes_carry_remainders():
    t = build_tree(Fraction(2, 7))
    assert t.is_root and t.remainder == Fraction(2, 7)
    for node in walk(t):
        if node.kind is NodeKind.DEAD:
            assert node.remainder is None and node.cf is None
        elif node.kind is NodeKind.LEAF:
            assert node.remainder == 0
            assert eval_cf(node.cf) == Fraction(2, 7)
        elif not node.is_root:
            assert 0 < abs(node.remainder) < 1


def test_dead_edges_are_unit_labels():
    for node in walk(build_tree(Fraction(5, 13))):
        for label, child in node.children:
            if child.kind is NodeKind.DEAD:
                assert abs(label) == 1 and not node.is_root


@pytest.mark.parametrize("r", [Fraction(0), Fraction(1), Fraction(4, 3)])
def test_build_tree_out_of_range(r):
    with pytest.raises(OutOfRange):
        build_tree(r)


def test_tree_matches_substitution_enumeration():
    for r in reduced_fractions(40):
        assert leaves(build_tree(r)) == boundary_cfs(simple_cf(r))


def test_to_dot_structure():
    dot = to_dot(build_tree(Fraction(2, 7)))
    lines = dot.splitlines()
    assert lines[0] == "digraph boundary_slope_tree {"
    assert lines[-1] == "}"
    body = lines[2:-1]
    nodes = [line for line in body if NODE_LINE.match(line)]
    edges = [line for line in body if EDGE_LINE.match(line)]
    assert len(nodes) + len(edges) == len(body)
    assert len(edges) == len(nodes) - 1
    assert sum("shape=box" in line for line in nodes) == 3
    assert sum(DEAD_LABEL in line for line in nodes) == 2
    assert '"[1, -2, 2, -3]"' in dot


def test_to_dot_ascii():
    dot = to_dot(build_tree(Fraction(2, 7)), ascii_only=True)
    assert DEAD_LABEL not in dot
    assert dot.count(DEAD_LABEL_ASCII) == 2
    dot.encode("ascii")


def test_to_dot_one_half():
    dot = to_dot(build_tree(Fraction(1, 2)))
    assert dot.count("shape=box") == 2
    assert "plaintext" not in dot


def test_branching_and_leaves_q60():
    for r in reduced_fractions(60):
        t = build_tree(r)
        for node in walk(t):
            if node.kind is not NodeKind.INTERNAL or node.is_root:
                continue
            inverse = 1 / node.remainder
            labels = [label for label, _ in node.children]
            assert labels == sorted({math.floor(inverse), math.ceil(inverse)})
            assert (len(labels) == 1) == (inverse.denominator == 1)
        live = leaf_list(t)
        assert all(eval_cf(cf) == r and cf.is_boundary for cf in live)
        assert len(live) <= fib_bound(simple_cf(r).n)


def test_nodes_are_frozen():
    t = build_tree(Fraction(2, 7))
    assert isinstance(t.children, tuple)
    with pytest.raises(dataclasses.FrozenInstanceError):
        t.children = ()
    _, child = t.children[0]
    with pytest.raises(dataclasses.FrozenInstanceError):
        child.num = 5
    assert t.remainder == Fraction(2, 7)


def test_check_subexpansions():
    for cf in leaf_list(build_tree(Fraction(2, 7))):
        check_subexpansions(cf)
    # [0, 1, -2] = 2 sits at index 1
    with pytest.raises(LemmaViolation) as exc:
        check_subexpansions(from_list([0, 3, 1, -2]))
    assert exc.value.details["index"] == 1
