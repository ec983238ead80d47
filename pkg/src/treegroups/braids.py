"""Braid words: exact equality via the Artin action, cabling, deletion, Burau matrices.

A braid on n strands is a word in the generators s1..s(n-1); word equality is
NOT braid equality, which is decided exactly (and faithfully) by comparing the
induced automorphisms of the free group F_n.  The product convention matches
the rest of the library: in ``a * b`` the right factor acts first, so the
rightmost letter of a word is the first crossing a strand meets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .cosimplicial import CoefficientSystem
from .errors import (
    ElementSyntaxError,
    IndexOutOfRangeError,
    NotPureError,
    StrandMismatchError,
)
from .kernel import FreeWord, Permutation

Letter = tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    """A word in braid generators: letters (i, sign) denote s_i^sign."""

    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for idx, sign in self.letters:
            if not 1 <= idx <= self.strands - 1:
                raise IndexOutOfRangeError(f"generator s{idx} on {self.strands} strands")
            if sign not in (1, -1):
                raise ValueError(f"bad sign {sign}")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise StrandMismatchError(f"{self.strands} vs {other.strands} strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def inv(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"s{i}" if s > 0 else f"s{i}^-1" for i, s in self.letters)

    @staticmethod
    def parse(text: str, strands: int | None = None) -> "BraidWord":
        letters: list[Letter] = []
        body = text.strip()
        if body not in ("", "1"):
            for pos, token in enumerate(body.split()):
                m = re.fullmatch(r"s(\d+)(?:\^(-?\d+))?", token)
                if m is None:
                    raise ElementSyntaxError(f"bad braid letter {token!r}", pos)
                idx, exp = int(m.group(1)), int(m.group(2)) if m.group(2) else 1
                letters.extend([(idx, 1 if exp > 0 else -1)] * abs(exp))
        if strands is None:
            strands = max((i for i, _ in letters), default=0) + 1
        return BraidWord(strands, tuple(letters))


def identity_braid(n: int) -> BraidWord:
    return BraidWord(n, ())


def generator(n: int, i: int, sign: int = 1) -> BraidWord:
    return BraidWord(n, ((i, sign),))


def perm_of(b: BraidWord) -> Permutation:
    """Underlying permutation: s_i maps to the transposition (i, i+1); multiplicative."""
    result = Permutation.identity(b.strands)
    for idx, _ in b.letters:
        result = result * _transposition(b.strands, idx)
    return result


def _transposition(n: int, i: int) -> Permutation:
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def _double_positive(j: int, i: int) -> list[Letter]:
    # table for the braid lift of strand doubling at position i applied to s_j
    if j == i:
        return [(i, 1), (i + 1, 1)]
    if j == i - 1:
        return [(i, 1), (i - 1, 1)]
    if j > i:
        return [(j + 1, 1)]
    return [(j, 1)]


def _double_letter(letter: Letter, i: int) -> list[Letter]:
    j, sign = letter
    if sign > 0:
        return _double_positive(j, i)
    # double(s_j^-1, i) = (double(s_j, t_j(i)))^-1 by the crossed law
    ti = j + 1 if i == j else j if i == j + 1 else i
    return [(k, -1) for k, _ in reversed(_double_positive(j, ti))]


def double_braid(b: BraidWord, i: int) -> BraidWord:
    """Cable the strand starting at position i into two parallel strands.

    Computed by the right-to-left crossed-law recursion
    double(w*l, i) = double(w, perm(l)(i)) * double(l, i).
    """
    if not 1 <= i <= b.strands:
        raise IndexOutOfRangeError(f"strand {i} of {b.strands}")
    out: list[Letter] = []
    pos = i
    for letter in reversed(b.letters):
        out[:0] = _double_letter(letter, pos)
        j = letter[0]
        pos = j + 1 if pos == j else j if pos == j + 1 else pos
    return BraidWord(b.strands + 1, tuple(out))


def delete_strand(b: BraidWord, i: int) -> BraidWord:
    """Remove the strand starting at position i; crossings it enters disappear."""
    if not 1 <= i <= b.strands:
        raise IndexOutOfRangeError(f"strand {i} of {b.strands}")
    if b.strands == 1:
        raise IndexOutOfRangeError("cannot delete the only strand")
    kept: list[Letter] = []
    pos = i
    for j, sign in reversed(b.letters):
        if pos == j:
            pos = j + 1
        elif pos == j + 1:
            pos = j
        else:
            kept.append((j - 1 if j > pos else j, sign))
    kept.reverse()
    return BraidWord(b.strands - 1, tuple(kept))


def delete_strand_pure(b: BraidWord, i: int) -> BraidWord:
    """The codegeneracy on pure braids: delete strand i, a homomorphism P_n -> P_(n-1)."""
    if not perm_of(b).is_identity():
        raise NotPureError("strand deletion as a homomorphism needs a pure braid")
    return delete_strand(b, i)


def undouble_braid(b: BraidWord, i: int) -> Optional[BraidWord]:
    """The preimage of b under doubling at i, when b lies in its image."""
    sigma = perm_of(b)
    if not 1 <= i < b.strands or sigma(i + 1) != sigma(i) + 1:
        return None
    candidate = delete_strand(b, i + 1)
    if braid_equal(double_braid(candidate, i), b):
        return candidate
    return None


_ARTIN_CACHE: dict[tuple[int, tuple[Letter, ...]], tuple[FreeWord, ...]] = {}


def artin_images(b: BraidWord) -> tuple[FreeWord, ...]:
    """Images of the free generators x1..xn under the automorphism induced by b.

    Generator rule: s_i sends x_i to x_i x_(i+1) x_i^-1 and x_(i+1) to x_i.
    The assignment b -> automorphism is multiplicative for the library's
    right-factor-first convention, and is faithful, so it decides equality.
    """
    key = (b.strands, b.letters)
    cached = _ARTIN_CACHE.get(key)
    if cached is not None:
        return cached
    images = [FreeWord(((g, 1),)) for g in range(1, b.strands + 1)]
    for j, sign in b.letters:
        if sign > 0:
            repl = {
                j: FreeWord(((j, 1), (j + 1, 1), (j, -1))),
                j + 1: FreeWord(((j, 1),)),
            }
        else:
            repl = {
                j: FreeWord(((j + 1, 1),)),
                j + 1: FreeWord(((j + 1, -1), (j, 1), (j + 1, 1))),
            }
        new_images = []
        for g in range(1, b.strands + 1):
            word = repl.get(g, FreeWord(((g, 1),)))
            out = FreeWord()
            for gen, s in word.letters:
                out = out * (images[gen - 1] if s > 0 else images[gen - 1].inv())
            new_images.append(out)
        images = new_images
    result = tuple(images)
    if len(_ARTIN_CACHE) > 4096:
        _ARTIN_CACHE.clear()
    _ARTIN_CACHE[key] = result
    return result


def braid_equal(a: BraidWord, b: BraidWord) -> bool:
    """Exact braid equality through the (faithful) Artin action."""
    if a.strands != b.strands:
        raise StrandMismatchError(f"{a.strands} vs {b.strands} strands")
    if a.letters == b.letters:
        return True
    return artin_images(a) == artin_images(b)


BRAIDS = CoefficientSystem(
    name="braids",
    identity=identity_braid,
    multiply=lambda g, h: g * h,
    invert=lambda g: g.inv(),
    to_permutation=perm_of,
    double=double_braid,
    delete_pure=delete_strand_pure,
    undouble=undouble_braid,
    equal=braid_equal,
    degree=lambda g: g.strands,
)


# ---------------------------------------------------------------------------
# Laurent polynomials and the (unreduced) Burau representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentPoly:
    """A Laurent polynomial in t with integer coefficients, stored as (exp, coeff) pairs."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        acc: dict[int, int] = {}
        for e, c in self.terms:
            acc[e] = acc.get(e, 0) + c
        object.__setattr__(
            self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        )

    @staticmethod
    def of(c: int, e: int = 0) -> "LaurentPoly":
        return LaurentPoly(((e, c),))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self.terms + other.terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(
            tuple((e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms)
        )

    def at_one(self) -> int:
        """Evaluate at t = 1."""
        return sum(c for _, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, c in self.terms:
            mono = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if e == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


L_ZERO = LaurentPoly()
L_ONE = LaurentPoly.of(1)
L_T = LaurentPoly.of(1, 1)
L_TINV = LaurentPoly.of(1, -1)

Matrix = tuple[tuple[LaurentPoly, ...], ...]


def laurent_identity(n: int) -> Matrix:
    return tuple(
        tuple(L_ONE if i == j else L_ZERO for j in range(n)) for i in range(n)
    )


def laurent_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(n)), L_ZERO) for j in range(n)
        )
        for i in range(n)
    )


def _burau_generator(n: int, i: int, sign: int) -> Matrix:
    rows = [list(row) for row in laurent_identity(n)]
    if sign > 0:
        rows[i - 1][i - 1] = L_ONE - L_T
        rows[i - 1][i] = L_T
        rows[i][i - 1] = L_ONE
        rows[i][i] = L_ZERO
    else:
        rows[i - 1][i - 1] = L_ZERO
        rows[i - 1][i] = L_ONE
        rows[i][i - 1] = L_TINV
        rows[i][i] = L_ONE - L_TINV
    return tuple(tuple(row) for row in rows)


def burau(b: BraidWord) -> Matrix:
    """Unreduced Burau matrix: s_i acts by the 2x2 block [[1-t, t], [1, 0]] at (i, i+1).

    At t = 1 the matrix degenerates to the permutation matrix of perm_of(b)
    (entry (perm(j), j) equal to 1).
    """
    m = laurent_identity(b.strands)
    for i, sign in b.letters:
        m = laurent_mul(m, _burau_generator(b.strands, i, sign))
    return m


def matrix_str(m: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(p) for p in row) + "]" for row in m) + "]"
