"""Tree-pair symbols over a pluggable coefficient system.

A symbol (target, source, g) with g of degree n = number of leaves represents a
group element; simultaneous caret expansions of both trees (with the coefficient
doubled) do not change the element.  Instantiating the coefficient system with
symmetric groups yields Thompson's group V; with braid groups it yields the
braided Thompson group.

The single nontrivial piece of machinery is the strand doubling map and its two
laws, which make expansion well defined:

    crossed law:   double(g*h, i) = double(g, perm(h)(i)) * double(h, i)
    exchange law:  double(double(g, i), j) = double(double(g, j), i+1)   (j < i)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional

from .errors import DegreeMismatchError, IndexOutOfRangeError
from .kernel import Permutation
from .trees import Tree, common_expansion


def double_perm(sigma: Permutation, i: int) -> Permutation:
    """The i-th strand doubling of a permutation: duplicate i at the source and sigma(i) at the target."""
    n = sigma.degree
    if not 1 <= i <= n:
        raise IndexOutOfRangeError(f"strand {i} of degree {n}")
    j = sigma(i)

    def image(k: int) -> int:
        if k == i:
            return j
        if k == i + 1:
            return j + 1
        old = sigma(k) if k < i else sigma(k - 1)
        return old + 1 if old > j else old

    return Permutation(tuple(image(k) for k in range(1, n + 2)))


def delete_point_perm(sigma: Permutation, i: int) -> Permutation:
    """Remove source point i and target point sigma(i), renumbering the rest."""
    n = sigma.degree
    if not 1 <= i <= n:
        raise IndexOutOfRangeError(f"point {i} of degree {n}")
    j = sigma(i)
    images = []
    for k in range(1, n + 1):
        if k == i:
            continue
        v = sigma(k)
        images.append(v - 1 if v > j else v)
    return Permutation(tuple(images))


def undouble_perm(sigma: Permutation, i: int) -> Optional[Permutation]:
    """Inverse of double_perm at i when sigma is in its image, else None."""
    if not 1 <= i < sigma.degree:
        return None
    if sigma(i + 1) != sigma(i) + 1:
        return None
    return delete_point_perm(sigma, i + 1)


@dataclass(frozen=True)
class CoefficientSystem:
    """Capability record for one family of groups G_n with strand doubling.

    ``double`` must satisfy the crossed and exchange laws above;
    ``delete_pure`` is the codegeneracy, defined on kernel elements (trivial
    underlying permutation); ``undouble`` decides membership in the image of
    ``double`` at i and extracts the preimage, or returns None.
    """

    name: str
    identity: Callable[[int], Any]
    multiply: Callable[[Any, Any], Any]
    invert: Callable[[Any], Any]
    to_permutation: Callable[[Any], Permutation]
    double: Callable[[Any, int], Any]
    delete_pure: Callable[[Any, int], Any]
    undouble: Callable[[Any, int], Optional[Any]]
    equal: Callable[[Any, Any], bool]
    degree: Callable[[Any], int]


PERMUTATIONS = CoefficientSystem(
    name="permutations",
    identity=Permutation.identity,
    multiply=lambda g, h: g * h,
    invert=lambda g: g.inv(),
    to_permutation=lambda g: g,
    double=double_perm,
    delete_pure=delete_point_perm,
    undouble=undouble_perm,
    equal=lambda g, h: g == h,
    degree=lambda g: g.degree,
)


@dataclass(frozen=True)
class TreePairSymbol:
    """(target tree, source tree, coefficient): source leaf i maps to target leaf perm(g)(i)."""

    target: Tree
    source: Tree
    coeff: Any

    def validate(self, sys: CoefficientSystem) -> "TreePairSymbol":
        n = self.source.leaves
        if self.target.leaves != n or sys.degree(self.coeff) != n:
            raise DegreeMismatchError(
                f"symbol components disagree: target {self.target.leaves} leaves, "
                f"source {n} leaves, coefficient degree {sys.degree(self.coeff)}"
            )
        return self

    @property
    def leaves(self) -> int:
        return self.source.leaves


def identity_symbol(sys: CoefficientSystem, tree: Tree = Tree("0")) -> TreePairSymbol:
    return TreePairSymbol(tree, tree, sys.identity(tree.leaves))


def symbol_expand(s: TreePairSymbol, i: int, sys: CoefficientSystem) -> TreePairSymbol:
    """Expand source leaf i and target leaf perm(g)(i), doubling the coefficient."""
    if not 1 <= i <= s.leaves:
        raise IndexOutOfRangeError(f"leaf {i} of a {s.leaves}-leaf symbol")
    j = sys.to_permutation(s.coeff)(i)
    return TreePairSymbol(s.target.expand(j), s.source.expand(i), sys.double(s.coeff, i))


def _reducible_at(s: TreePairSymbol, sys: CoefficientSystem) -> Optional[TreePairSymbol]:
    src_addr = s.source.leaf_addresses()
    tgt_addr = s.target.leaf_addresses()
    perm = sys.to_permutation(s.coeff)
    for i in range(1, s.leaves):
        j = perm(i)
        if perm(i + 1) != j + 1:
            continue
        if not (src_addr[i - 1][:-1] == src_addr[i][:-1]
                and src_addr[i - 1].endswith("0") and src_addr[i].endswith("1")):
            continue
        if not (tgt_addr[j - 1][:-1] == tgt_addr[j][:-1]
                and tgt_addr[j - 1].endswith("0") and tgt_addr[j].endswith("1")):
            continue
        shrunk = sys.undouble(s.coeff, i)
        if shrunk is None:
            continue
        pos_src = s.source._leaf_positions()[i - 1]
        pos_tgt = s.target._leaf_positions()[j - 1]
        source = Tree(s.source.bits[:pos_src - 1] + "0" + s.source.bits[pos_src + 2:])
        target = Tree(s.target.bits[:pos_tgt - 1] + "0" + s.target.bits[pos_tgt + 2:])
        return TreePairSymbol(target, source, shrunk)
    return None


def symbol_reduce(s: TreePairSymbol, sys: CoefficientSystem) -> TreePairSymbol:
    """Cancel caret pairs until no expansion can be undone; idempotent."""
    while True:
        smaller = _reducible_at(s, sys)
        if smaller is None:
            return s
        s = smaller


def symbol_multiply(a: TreePairSymbol, b: TreePairSymbol, sys: CoefficientSystem) -> TreePairSymbol:
    """Product a * b: expand until a.source = b.target, compose coefficients, reduce."""
    _, steps_a, steps_b = common_expansion(a.source, b.target)
    for i in steps_a:
        a = symbol_expand(a, i, sys)
    for j in steps_b:
        # expanding b's target at leaf j is expanding its source at the preimage of j
        b = symbol_expand(b, sys.to_permutation(b.coeff).inv()(j), sys)
    assert a.source == b.target
    product = TreePairSymbol(a.target, b.source, sys.multiply(a.coeff, b.coeff))
    return symbol_reduce(product, sys)


def symbol_invert(s: TreePairSymbol, sys: CoefficientSystem) -> TreePairSymbol:
    return TreePairSymbol(s.source, s.target, sys.invert(s.coeff))


def symbol_equal(a: TreePairSymbol, b: TreePairSymbol, sys: CoefficientSystem) -> bool:
    """Decide equality of the represented elements (exact: reduce and compare)."""
    ra, rb = symbol_reduce(a, sys), symbol_reduce(b, sys)
    return ra.target == rb.target and ra.source == rb.source and sys.equal(ra.coeff, rb.coeff)


def symbol_power(s: TreePairSymbol, k: int, sys: CoefficientSystem) -> TreePairSymbol:
    if k < 0:
        return symbol_power(symbol_invert(s, sys), -k, sys)
    acc = identity_symbol(sys)
    for _ in range(k):
        acc = symbol_multiply(acc, s, sys)
    return acc


def is_identity_symbol(s: TreePairSymbol, sys: CoefficientSystem) -> bool:
    r = symbol_reduce(s, sys)
    return r.target == r.source and sys.equal(r.coeff, sys.identity(r.leaves))


def project_to_V(s: TreePairSymbol, sys: CoefficientSystem) -> TreePairSymbol:
    """Replace the coefficient by its underlying permutation: the morphism onto V."""
    return TreePairSymbol(s.target, s.source, sys.to_permutation(s.coeff))
