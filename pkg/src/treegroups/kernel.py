"""Exact arithmetic primitives: projective rationals, dyadics, permutations, free words.

Everything here is immutable and arbitrary precision; no floating point enters
or leaves this module.  The composition convention, fixed library-wide, is
``(g * h)(x) = g(h(x))`` — the right factor acts first.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import EqualArgumentsError, ElementSyntaxError


@dataclass(frozen=True, order=False)
class Frac:
    """A rational p/q in lowest terms; q = 0 is reserved for the single point inf = 1/0.

    The pair (0, 0) is forbidden, and -1/0 normalizes to 1/0 so the point at
    infinity is unique.
    """

    num: int
    den: int = 1

    def __post_init__(self):
        num, den = self.num, self.den
        if den == 0:
            if num == 0:
                raise ValueError("0/0 is not a rational")
            num = 1
        else:
            if den < 0:
                num, den = -num, -den
            g = math.gcd(num, den)
            if g > 1:
                num, den = num // g, den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def _require_finite(self) -> None:
        if self.den == 0:
            raise ValueError("arithmetic on the point at infinity")

    @staticmethod
    def of(value: "Frac | int") -> "Frac":
        return value if isinstance(value, Frac) else Frac(value)

    def __add__(self, other: "Frac | int") -> "Frac":
        other = Frac.of(other)
        self._require_finite(), other._require_finite()
        return Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __radd__(self, other: int) -> "Frac":
        return self.__add__(other)

    def __neg__(self) -> "Frac":
        self._require_finite()
        return Frac(-self.num, self.den)

    def __sub__(self, other: "Frac | int") -> "Frac":
        return self.__add__(-Frac.of(other))

    def __rsub__(self, other: int) -> "Frac":
        return Frac.of(other).__sub__(self)

    def __mul__(self, other: "Frac | int") -> "Frac":
        other = Frac.of(other)
        self._require_finite(), other._require_finite()
        return Frac(self.num * other.num, self.den * other.den)

    def __rmul__(self, other: int) -> "Frac":
        return self.__mul__(other)

    def __truediv__(self, other: "Frac | int") -> "Frac":
        other = Frac.of(other)
        self._require_finite(), other._require_finite()
        if other.num == 0:
            raise ZeroDivisionError("division by zero rational")
        return Frac(self.num * other.den, self.den * other.num)

    def __lt__(self, other: "Frac | int") -> bool:
        other = Frac.of(other)
        self._require_finite(), other._require_finite()
        return self.num * other.den < other.num * self.den

    def __le__(self, other: "Frac | int") -> bool:
        other = Frac.of(other)
        return self == other or self < other

    def __gt__(self, other: "Frac | int") -> bool:
        return Frac.of(other) < self

    def __ge__(self, other: "Frac | int") -> bool:
        other = Frac.of(other)
        return self == other or other < self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Frac(other)
        if not isinstance(other, Frac):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __float__(self) -> float:
        self._require_finite()
        return self.num / self.den

    def floor(self) -> int:
        self._require_finite()
        return self.num // self.den

    def __str__(self) -> str:
        if self.den == 0:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    @staticmethod
    def parse(text: str) -> "Frac":
        text = text.strip()
        if text in ("inf", "1/0"):
            return INF
        m = re.fullmatch(r"(-?\d+)(?:/(-?\d+))?", text)
        if m is None:
            raise ElementSyntaxError(f"not a rational: {text!r}")
        return Frac(int(m.group(1)), int(m.group(2)) if m.group(2) else 1)


INF = Frac(1, 0)


def cross(a: Frac, b: Frac) -> int:
    """Determinant a.num*b.den - b.num*a.den of the two vertex vectors."""
    return a.num * b.den - b.num * a.den


def mediant(a: Frac, b: Frac) -> Frac:
    """Farey mediant (a.num+b.num)/(a.den+b.den); inf contributes (+-1, 0).

    The sign of the infinite contribution is chosen so the result lies between
    the finite argument and inf in the circular (Stern-Brocot) order: above all
    nonnegative rationals, below all negative ones.
    """
    if a == b:
        raise EqualArgumentsError("mediant needs two distinct vertices")
    if a.is_infinite:
        a, b = b, a
    if b.is_infinite:
        sign = 1 if a.num >= 0 else -1
        return Frac(a.num + sign, a.den)
    return Frac(a.num + b.num, a.den + b.den)


def comediant(a: Frac, b: Frac) -> Frac:
    """The difference vertex (a.num-b.num)/(a.den-b.den): the other Farey neighbor of {a, b}."""
    if a == b:
        raise EqualArgumentsError("comediant needs two distinct vertices")
    if a.is_infinite:
        a, b = b, a
    if b.is_infinite:
        sign = -1 if a.num >= 0 else 1
        return Frac(a.num + sign, a.den)
    return Frac(a.num - b.num, a.den - b.den)


def is_unimodular(a: Frac, b: Frac) -> bool:
    """True iff {a, b} is a Farey edge: |a.num*b.den - b.num*a.den| = 1."""
    if a == b:
        raise EqualArgumentsError("unimodularity needs two distinct vertices")
    return abs(cross(a, b)) == 1


def _frac_lt(a: Frac, b: Frac) -> bool:
    ka, kb = a.is_infinite, b.is_infinite
    if ka or kb:
        return ka and not kb
    return a.num * b.den < b.num * a.den


def ccw(a: Frac, b: Frac, c: Frac) -> bool:
    """True iff the cyclic order (a, b, c) is counterclockwise on the circle.

    Counterclockwise means cyclically increasing in the order inf < q (q finite,
    by value).  Requires three distinct points.
    """
    if a == b or b == c or a == c:
        raise EqualArgumentsError("ccw needs three distinct points")
    ab, bc, ca = _frac_lt(a, b), _frac_lt(b, c), _frac_lt(c, a)
    return (ab and bc) or (bc and ca) or (ca and ab)


@dataclass(frozen=True)
class Dyadic:
    """A dyadic rational num / 2^exp, normalized so num is odd or exp = 0."""

    num: int
    exp: int = 0

    def __post_init__(self):
        num, exp = self.num, self.exp
        if exp < 0:
            raise ValueError("exponent must be nonnegative")
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def as_frac(self) -> Frac:
        return Frac(self.num, 1 << self.exp)

    @staticmethod
    def from_frac(q: Frac) -> "Dyadic":
        den = q.den
        exp = den.bit_length() - 1
        if den != 1 << exp:
            raise ValueError(f"{q} is not dyadic")
        return Dyadic(q.num, exp)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.exp))

    def __lt__(self, other: "Dyadic") -> bool:
        return self.as_frac() < other.as_frac()

    def __str__(self) -> str:
        return str(self.num) if self.exp == 0 else f"{self.num}/2^{self.exp}"


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} stored as its one-line image sequence.

    Composition is (g * h)(x) = g(h(x)): the right factor acts first.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in permutation product")
        return Permutation(tuple(self.images[other.images[i] - 1] for i in range(self.degree)))

    def inv(self) -> "Permutation":
        images = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            images[j - 1] = i
        return Permutation(tuple(images))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def cyclic_shift(self) -> int | None:
        """The shift k if this is i -> ((i-1+k) mod n)+1, else None."""
        n = self.degree
        k = self.images[0] - 1
        if all(self.images[i] == (i + k) % n + 1 for i in range(n)):
            return k
        return None

    def __str__(self) -> str:
        return "[" + ",".join(str(i) for i in self.images) + "]"

    @staticmethod
    def parse(text: str) -> "Permutation":
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        try:
            images = tuple(int(part) for part in body.split(",") if part.strip())
        except ValueError as exc:
            raise ElementSyntaxError(f"not a permutation: {text!r}") from exc
        return Permutation(images)


Letter = tuple[int, int]


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word in generators x1, x2, ... with signs +-1."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inv(self) -> "FreeWord":
        return FreeWord(tuple((g, -s) for g, s in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{g}" if s > 0 else f"x{g}^-1" for g, s in self.letters)


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, sign in letters:
        if sign not in (1, -1) or gen < 1:
            raise ValueError(f"bad letter ({gen}, {sign})")
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


def free_reduce(word: FreeWord | Iterable[Letter]) -> FreeWord:
    """Fully reduce a word; idempotent."""
    if isinstance(word, FreeWord):
        return FreeWord(word.letters)
    return FreeWord(tuple(word))
