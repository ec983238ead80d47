"""Piecewise dyadic affine semantics of tree-pair symbols over permutations.

A symbol (target, source, sigma) acts by mapping the i-th source leaf interval
affinely onto the sigma(i)-th target leaf interval.  Identity permutations give
interval maps (Thompson's F), cyclic permutations give circle maps (T), and the
rest give right-continuous interval exchanges (V).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .cosimplicial import (
    PERMUTATIONS,
    TreePairSymbol,
    identity_symbol,
    is_identity_symbol,
    symbol_equal,
    symbol_invert,
    symbol_multiply,
    symbol_power,
    symbol_reduce,
)
from .errors import (
    AddressTooShortError,
    NoGeneratorFoundError,
    OutOfDomainError,
    SearchExceededError,
)
from .kernel import Frac, Permutation
from .trees import Tree


@dataclass(frozen=True)
class Piece:
    """One affine piece x -> 2^slope_exp * x + offset on [src_lo, src_hi]."""

    src_lo: Frac
    src_hi: Frac
    slope_exp: int
    offset: Frac

    def apply(self, x: Frac) -> Frac:
        scale = Frac(1 << self.slope_exp) if self.slope_exp >= 0 else Frac(1, 1 << -self.slope_exp)
        return scale * x + self.offset


@dataclass(frozen=True)
class PLMap:
    """An exact piecewise affine map with power-of-two slopes and dyadic breaks.

    mode is "interval" (continuous on [0,1], fixes endpoints), "circle"
    (continuous on R/Z; ``shift`` counts how many pieces wrap past 1) or "v"
    (right-continuous interval exchange on [0,1)).
    """

    pieces: tuple[Piece, ...]
    mode: str
    shift: int = 0

    def eval(self, x: Frac) -> Frac:
        if self.mode == "interval":
            if not Frac(0) <= x <= Frac(1):
                raise OutOfDomainError(f"{x} outside [0,1]")
            if x == Frac(1):
                return self.pieces[-1].apply(x)
        else:
            if not Frac(0) <= x < Frac(1):
                raise OutOfDomainError(f"{x} outside [0,1)")
        for piece in self.pieces:
            if piece.src_lo <= x < piece.src_hi:
                y = piece.apply(x)
                if self.mode != "interval" and y >= Frac(1):
                    y = y - Frac(1)
                return y
        raise OutOfDomainError(f"{x} not covered by any piece")

    def is_identity(self) -> bool:
        return all(p.slope_exp == 0 and p.offset == Frac(0) for p in self.pieces)

    def table(self) -> str:
        rows = []
        for p in self.pieces:
            rows.append(f"{p.src_lo}->{p.apply(p.src_lo)} @slope 2^{p.slope_exp}")
        last = self.pieces[-1]
        rows.append(f"{last.src_hi}->{last.apply(last.src_hi)} @slope 2^{last.slope_exp}")
        return "\n".join(rows)


def _log2_frac(q: Frac) -> int:
    num, den = q.num, q.den
    if num <= 0:
        raise ValueError("slope must be positive")
    if num == 1:
        exp = den.bit_length() - 1
        if den != 1 << exp:
            raise ValueError(f"{q} is not a power of two")
        return -exp
    exp = num.bit_length() - 1
    if den != 1 or num != 1 << exp:
        raise ValueError(f"{q} is not a power of two")
    return exp


def to_plmap(s: TreePairSymbol) -> PLMap:
    """The piecewise dyadic affine bijection represented by a permutation symbol."""
    src = s.source.leaf_intervals()
    tgt = s.target.leaf_intervals()
    sigma: Permutation = s.coeff
    pieces = []
    for i, (a, b) in enumerate(src, start=1):
        c, d = tgt[sigma(i) - 1]
        slope = (d - c) / (b - a)
        exp = _log2_frac(slope)
        offset = c - slope * a
        pieces.append(Piece(a, b, exp, offset))
    shift = sigma.cyclic_shift()
    if sigma.is_identity():
        mode = "interval"
    elif shift is not None:
        mode = "circle"
    else:
        mode = "v"
    return PLMap(tuple(pieces), mode, shift or 0)


def eval_map(m: PLMap, x: Frac) -> Frac:
    return m.eval(x)


def is_continuous(m: PLMap) -> bool:
    """Continuity at the interior breaks (and across 0 ~ 1 for circle mode)."""
    for left, right in zip(m.pieces, m.pieces[1:]):
        y_left = left.apply(left.src_hi)
        y_right = right.apply(right.src_lo)
        if m.mode != "interval":
            if y_left >= Frac(1):
                y_left = y_left - Frac(1)
            if y_right >= Frac(1):
                y_right = y_right - Frac(1)
        if y_left != y_right:
            return False
    if m.mode == "circle":
        first = m.pieces[0].apply(m.pieces[0].src_lo)
        last = m.pieces[-1].apply(m.pieces[-1].src_hi)
        if (last - first) != Frac(1) and last != first:
            return False
    return True


def cantor_apply(s: TreePairSymbol, word: str) -> str:
    """Boundary action on the Cantor set of binary addresses.

    The source-leaf address that prefixes ``word`` is replaced by the address
    of the image leaf; the suffix is untouched.
    """
    src_addr = s.source.leaf_addresses()
    tgt_addr = s.target.leaf_addresses()
    sigma: Permutation = s.coeff
    for i, addr in enumerate(src_addr, start=1):
        if word.startswith(addr):
            return tgt_addr[sigma(i) - 1] + word[len(addr):]
    raise AddressTooShortError(f"no source leaf address prefixes {word!r}")


def _lift_pieces(m: PLMap) -> list[Piece]:
    """Pieces of the increasing lift G: [0,1) -> R with G continuous, G(x+1) = G(x)+1."""
    n = len(m.pieces)
    wrap_from = n - m.shift  # pieces with index >= wrap_from map past 1
    lifted = []
    for idx, p in enumerate(m.pieces):
        offset = p.offset if idx < wrap_from else p.offset + Frac(1)
        lifted.append(Piece(p.src_lo, p.src_hi, p.slope_exp, offset))
    return lifted


def _step_with_wrap(m: PLMap, x: Frac) -> tuple[Frac, int]:
    """One application of a circle map plus the winding contribution of the piece used."""
    wrap_from = len(m.pieces) - m.shift
    for idx, piece in enumerate(m.pieces):
        if piece.src_lo <= x < piece.src_hi:
            y = piece.apply(x)
            if y == Frac(1):
                y = Frac(0)
            return y, (1 if idx >= wrap_from else 0)
    raise OutOfDomainError(f"{x} not covered by any piece")


def _fixed_point(m: PLMap) -> Frac | None:
    """An exact fixed point of a circle map, via its increasing lift, or None."""
    if m.is_identity():
        return Frac(0)
    for piece in _lift_pieces(m):
        lo_val = piece.apply(piece.src_lo)
        for p in range(lo_val.floor() - 1, lo_val.floor() + 3):
            if piece.slope_exp == 0:
                if piece.offset == Frac(p):
                    return piece.src_lo
                continue
            scale = (
                Frac(1 << piece.slope_exp)
                if piece.slope_exp >= 0
                else Frac(1, 1 << -piece.slope_exp)
            )
            x = (Frac(p) - piece.offset) / (scale - 1)
            if piece.src_lo <= x < piece.src_hi:
                return x
    return None


def rotation_number(s: TreePairSymbol, q_cap: int = 64) -> Frac:
    """Exact rotation number of a T-symbol, as a reduced fraction in [0, 1).

    Searches the least q <= q_cap such that the q-th power has a fixed point;
    on a lift piece with slope 2^a the equation 2^a x + c = x + p is solved
    over the rationals and membership in the piece is tested exactly.  The
    winding p is then read off the base map along the periodic orbit.
    """
    base = to_plmap(symbol_reduce(s, PERMUTATIONS))
    if base.mode == "v":
        raise OutOfDomainError("rotation numbers need a circle (or interval) map")
    power = identity_symbol(PERMUTATIONS)
    for q in range(1, q_cap + 1):
        power = symbol_multiply(s, power, PERMUTATIONS)
        x = _fixed_point(to_plmap(power))
        if x is None:
            continue
        winding = 0
        for _ in range(q):
            x, wrapped = _step_with_wrap(base, x)
            winding += wrapped
        return Frac(winding % q, q)
    raise SearchExceededError(f"no periodic point up to power {q_cap}")


def element_order(s: TreePairSymbol, cap: int = 64) -> int | None:
    """Least k <= cap with s^k the identity, else None ("exceeds cap")."""
    acc = identity_symbol(PERMUTATIONS)
    for k in range(1, cap + 1):
        acc = symbol_multiply(acc, s, PERMUTATIONS)
        if is_identity_symbol(acc, PERMUTATIONS):
            return k
    return None


def _all_trees(leaves: int) -> list[Tree]:
    if leaves == 1:
        return [Tree("0")]
    out = []
    for left in range(1, leaves):
        for lt, rt in product(_all_trees(left), _all_trees(leaves - left)):
            out.append(Tree("1" + lt.bits + rt.bits))
    return out


def _t_symbols(max_leaves: int):
    """All reduced T-symbols with <= max_leaves leaves, in a fixed deterministic order."""
    for n in range(2, max_leaves + 1):
        trees = sorted(_all_trees(n), key=lambda t: t.bits)
        for target, source in product(trees, trees):
            for k in range(1, n):
                sigma = Permutation(tuple((i + k) % n + 1 for i in range(n)))
                s = TreePairSymbol(target, source, sigma)
                if symbol_reduce(s, PERMUTATIONS) == s:
                    yield s


def _word_symbol(word: str, a: TreePairSymbol, b: TreePairSymbol) -> TreePairSymbol:
    acc = identity_symbol(PERMUTATIONS)
    table = {"a": a, "b": b}
    for ch in word:
        acc = symbol_multiply(acc, table[ch], PERMUTATIONS)
    return acc


def _commutator(u: TreePairSymbol, v: TreePairSymbol) -> TreePairSymbol:
    uv = symbol_multiply(u, v, PERMUTATIONS)
    vu = symbol_multiply(v, u, PERMUTATIONS)
    return symbol_multiply(uv, symbol_invert(vu, PERMUTATIONS), PERMUTATIONS)


def _satisfies_presentation(a: TreePairSymbol, b: TreePairSymbol) -> bool:
    ba = symbol_multiply(b, a, PERMUTATIONS)
    if not is_identity_symbol(symbol_power(ba, 5, PERMUTATIONS), PERMUTATIONS):
        return False
    bab = _word_symbol("bab", a, b)
    first = _word_symbol("aababaa", a, b)
    second = _word_symbol("aabbaababaabaa", a, b)
    return is_identity_symbol(_commutator(bab, first), PERMUTATIONS) and is_identity_symbol(
        _commutator(bab, second), PERMUTATIONS
    )


@lru_cache(maxsize=1)
def generators_T() -> tuple[TreePairSymbol, TreePairSymbol]:
    """A canonical pair (alpha, beta) of T generators with orders 4 and 3.

    Found once by exhaustive search over reduced symbols with at most 5 leaves
    and cyclic coefficient permutations, in the documented deterministic order
    (leaf count, then lexicographic tree pair, then shift); the first pair
    satisfying the order, pentagon and both commutator relations is frozen.
    """
    candidates = list(_t_symbols(5))
    alphas = [s for s in candidates if element_order(s, 4) == 4]
    betas = [s for s in candidates if element_order(s, 3) == 3]
    for a in alphas:
        for b in betas:
            if _satisfies_presentation(a, b):
                return a, b
    raise NoGeneratorFoundError("no (alpha, beta) pair with <= 5 leaves found")
