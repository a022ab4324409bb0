"""
Binary tree of all continued fractions of p/q with every term >= 2 in absolute value

A vertex carries the current subexpansion r (|r| < 1 below the root). The next
term is floor(1/r) or ceil(1/r); an edge labelled +-1 ends in a dead leaf and a
zero remainder ends in a live leaf carrying the path as a continued fraction.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, Optional, Set, Tuple

import structlog

from services.cf_core import ContinuedFraction, Rational, from_list, subexpansions
from services.error_handler import LemmaViolation, OutOfRange

logger = structlog.get_logger(__name__)

DEAD_LABEL = "∄"
DEAD_LABEL_ASCII = "DNE"


class NodeKind(Enum):
    INTERNAL = "internal"
    LEAF = "leaf"
    DEAD = "dead"


@dataclass(frozen=True, eq=False)
class TreeNode:
    # remainder as a reduced pair num/den, den > 0; None on dead leaves
    num: Optional[int]
    den: Optional[int]
    path: Tuple[int, ...]
    kind: NodeKind
    # attached once by build_tree
    children: Tuple[Tuple[int, "TreeNode"], ...] = ()

    @property
    def remainder(self) -> Optional[Rational]:
        if self.num is None:
            return None
        return Fraction(self.num, self.den)

    @property
    def cf(self) -> Optional[ContinuedFraction]:
        """Continued fraction spelled by the edge labels, for live leaves"""
        if self.kind is not NodeKind.LEAF:
            return None
        return from_list(self.path)

    @property
    def is_root(self) -> bool:
        return not self.path


def _child(num: int, den: int, label: int, path: Tuple[int, ...], checked: bool) -> TreeNode:
    """Child of a vertex whose next value is num/den (den > 0), along the edge label"""
    if abs(label) == 1 and checked:
        return TreeNode(num=None, den=None, path=path, kind=NodeKind.DEAD)

    # gcd(num - label * den, den) = gcd(num, den) = 1, so the pair stays reduced
    rest = num - label * den
    kind = NodeKind.LEAF if rest == 0 else NodeKind.INTERNAL
    return TreeNode(num=rest, den=den, path=path, kind=kind)


def _attach(node: TreeNode, children: List[Tuple[int, TreeNode]]) -> None:
    object.__setattr__(node, "children", tuple(children))


def build_tree(r: Rational) -> TreeNode:
    """Build the tree for 0 < r < 1 with an explicit stack"""
    r = Fraction(r)
    if not 0 < r < 1:
        raise OutOfRange(f"Tree construction needs 0 < r < 1, got {r}", details={"fraction": str(r)})

    root = TreeNode(num=r.numerator, den=r.denominator, path=(), kind=NodeKind.INTERNAL)
    # root edges are the integral component: floor(r) = 0 and ceil(r) = 1
    _attach(root, [(label, _child(root.num, root.den, label, (label,), checked=False)) for label in (0, 1)])

    live = dead = 0
    stack = [child for _, child in reversed(root.children) if child.kind is NodeKind.INTERNAL]
    while stack:
        node = stack.pop()
        # 1/(num/den) = den/num, carried with a positive denominator
        num, den = (node.den, node.num) if node.num > 0 else (-node.den, -node.num)
        low = num // den
        labels = (low,) if num % den == 0 else (low, low + 1)
        children = [(label, _child(num, den, label, node.path + (label,), checked=True)) for label in labels]
        _attach(node, children)
        for _, child in children:
            if child.kind is NodeKind.LEAF:
                live += 1
            elif child.kind is NodeKind.DEAD:
                dead += 1
        stack.extend(child for _, child in reversed(children) if child.kind is NodeKind.INTERNAL)

    logger.debug("tree_built", fraction=str(r), live=live, dead=dead)
    return root


def check_subexpansions(cf: ContinuedFraction) -> None:
    """Raise LemmaViolation unless every subexpansion of cf is below 1 in absolute value"""
    for k, value in enumerate(subexpansions(cf)):
        if not abs(value) < 1:
            raise LemmaViolation(f"Subexpansion {k} of {cf} is {value}, not below 1 in absolute value",
                                 details={"cf": cf.to_list(), "index": k, "remainder": str(value)})


def walk(t: TreeNode) -> Iterator[TreeNode]:
    """Preorder traversal, floor edge before ceiling edge"""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(child for _, child in reversed(node.children))


def leaves(t: TreeNode) -> Set[ContinuedFraction]:
    return {node.cf for node in walk(t) if node.kind is NodeKind.LEAF}


def leaf_list(t: TreeNode) -> List[ContinuedFraction]:
    """Live leaves in traversal order"""
    return [node.cf for node in walk(t) if node.kind is NodeKind.LEAF]


def count_leaves(t: TreeNode) -> Tuple[int, int]:
    """(live, dead)"""
    live = dead = 0
    for node in walk(t):
        if node.kind is NodeKind.LEAF:
            live += 1
        elif node.kind is NodeKind.DEAD:
            dead += 1
    return live, dead


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('\\', '\\\\').replace('"', r'\"'))


def to_dot(t: TreeNode, ascii_only: bool = False) -> str:
    """Render as a DOT digraph; vertices show remainders, leaves their fraction"""
    dead_label = DEAD_LABEL_ASCII if ascii_only else DEAD_LABEL
    ids = {}
    lines = ["digraph boundary_slope_tree {", "  node [shape=ellipse];"]

    for index, node in enumerate(walk(t)):
        ids[id(node)] = f"n{index}"
        if node.kind is NodeKind.DEAD:
            label, shape = dead_label, "plaintext"
        elif node.kind is NodeKind.LEAF:
            label, shape = str(node.cf), "box"
        else:
            label, shape = str(node.remainder), "ellipse"
        lines.append(f"  n{index} [label={_gvquote(label)}, shape={shape}];")

    for node in walk(t):
        for label, child in node.children:
            lines.append(f"  {ids[id(node)]} -> {ids[id(child)]} [label={_gvquote(str(label))}];")

    lines.append("}")
    return "\n".join(lines) + "\n"
