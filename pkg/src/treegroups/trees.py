"""Finite binary rooted planar trees encoded as preorder bit strings.

'1' marks an internal vertex, '0' a leaf; leaves are numbered 1..n from left to
right, and leaf i carries the standard dyadic interval obtained by repeated
halving of [0, 1].  Equality of trees is equality of bit strings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRangeError
from .kernel import Dyadic, Frac


@dataclass(frozen=True)
class Tree:
    """A binary tree as its preorder shape string."""

    bits: str

    def __post_init__(self):
        ones = zeros = 0
        for pos, ch in enumerate(self.bits):
            if ch == "1":
                ones += 1
            elif ch == "0":
                zeros += 1
            else:
                raise ValueError(f"bad character {ch!r} in tree string")
            if zeros > ones and pos != len(self.bits) - 1:
                raise ValueError(f"not a preorder tree encoding: {self.bits!r}")
        if zeros != ones + 1:
            raise ValueError(f"not a preorder tree encoding: {self.bits!r}")

    @property
    def leaves(self) -> int:
        return self.bits.count("0")

    def _leaf_positions(self) -> list[int]:
        return [pos for pos, ch in enumerate(self.bits) if ch == "0"]

    def _check_leaf(self, i: int) -> None:
        if not 1 <= i <= self.leaves:
            raise IndexOutOfRangeError(f"leaf {i} of a {self.leaves}-leaf tree")

    def expand(self, i: int) -> "Tree":
        """Graft a caret at leaf i: the result has one more leaf."""
        self._check_leaf(i)
        pos = self._leaf_positions()[i - 1]
        return Tree(self.bits[:pos] + "100" + self.bits[pos + 1:])

    def leaf_intervals(self) -> list[tuple[Frac, Frac]]:
        """The dyadic interval of every leaf, in leaf order; they tile [0, 1]."""
        out: list[tuple[Frac, Frac]] = []
        stack: list[tuple[Frac, Frac]] = [(Frac(0), Frac(1))]
        for ch in self.bits:
            lo, hi = stack.pop()
            if ch == "1":
                mid = (lo + hi) / 2
                stack.append((mid, hi))
                stack.append((lo, mid))
            else:
                out.append((lo, hi))
        return out

    def leaf_interval(self, i: int) -> tuple[Dyadic, Dyadic]:
        """[k/2^m, (k+1)/2^m] of leaf i."""
        self._check_leaf(i)
        lo, hi = self.leaf_intervals()[i - 1]
        return Dyadic.from_frac(lo), Dyadic.from_frac(hi)

    def leaf_addresses(self) -> list[str]:
        """The 0/1 root-to-leaf address of every leaf (0 = left child)."""
        out: list[str] = []
        stack: list[str] = [""]
        for ch in self.bits:
            prefix = stack.pop()
            if ch == "1":
                stack.append(prefix + "1")
                stack.append(prefix + "0")
            else:
                out.append(prefix)
        return out

    def leaf_address(self, i: int) -> str:
        self._check_leaf(i)
        return self.leaf_addresses()[i - 1]

    def breakpoints(self) -> list[Frac]:
        """All subdivision points of the leaf intervals, endpoints included."""
        ivs = self.leaf_intervals()
        return [iv[0] for iv in ivs] + [Frac(1)]

    def __str__(self) -> str:
        return self.bits


LEAF = Tree("0")


def _tree_of_points(lo: Frac, hi: Frac, pts: frozenset[Frac]) -> str:
    if not any(lo < p < hi for p in pts):
        return "0"
    mid = (lo + hi) / 2
    return "1" + _tree_of_points(lo, mid, pts) + _tree_of_points(mid, hi, pts)


def tree_of_breakpoints(points: frozenset[Frac] | set[Frac]) -> Tree:
    """The unique tree whose leaf subdivision has exactly the given dyadic breakpoints."""
    return Tree(_tree_of_points(Frac(0), Frac(1), frozenset(points)))


def _expansion_steps(start: Tree, target_points: frozenset[Frac]) -> tuple[Tree, list[int]]:
    steps: list[int] = []
    cur = start
    while True:
        for i, (lo, hi) in enumerate(cur.leaf_intervals(), start=1):
            if any(lo < p < hi for p in target_points):
                cur = cur.expand(i)
                steps.append(i)
                break
        else:
            return cur, steps


def common_expansion(a: Tree, b: Tree) -> tuple[Tree, list[int], list[int]]:
    """Least common expansion of two trees plus the expansion steps from each.

    Computed as the union of the two dyadic subdivisions: every breakpoint of
    either tree becomes a breakpoint of the result.  Replaying either step
    sequence through ``expand`` reproduces the result from the respective input.
    """
    points = frozenset(a.breakpoints()) | frozenset(b.breakpoints())
    union = tree_of_breakpoints(points)
    _, steps_a = _expansion_steps(a, points)
    _, steps_b = _expansion_steps(b, points)
    return union, steps_a, steps_b
