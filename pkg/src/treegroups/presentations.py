"""Finite presentations as data, relator checking against executable groups,
and the built-in instances: the two-generator presentation of T, its central
extensions T_{n,p,q,r,s}, the relative abelianization, and the braided
Houghton presentations checked in a Houghton-style permutation model.

Words evaluate in the library convention (right factor acts first).  The
Houghton presentations come from a source using the opposite convention
("a b" = a followed by b); they carry convention="left" and check_relators
reverses their words at the evaluation boundary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable

from .errors import ElementSyntaxError, IndexOutOfRangeError, MissingImageError

Letter = tuple[str, int]
Word = tuple[Letter, ...]


def parse_word(text: str) -> Word:
    """Parse "a^2 b^-1 z" into ((a,1),(a,1),(b,-1),(z,1)); inverse powers expand; "1" is empty."""
    if text.strip() in ("", "1"):
        return ()
    letters: list[Letter] = []
    for pos, token in enumerate(text.split()):
        m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?", token)
        if m is None:
            raise ElementSyntaxError(f"bad word token {token!r}", pos)
        name, exp = m.group(1), int(m.group(2)) if m.group(2) else 1
        letters.extend([(name, 1 if exp > 0 else -1)] * abs(exp))
    return tuple(letters)


def format_word(word: Word) -> str:
    if not word:
        return "1"
    parts: list[str] = []
    i = 0
    while i < len(word):
        name, sign = word[i]
        j = i
        while j < len(word) and word[j] == (name, sign):
            j += 1
        count = (j - i) * sign
        parts.append(name if count == 1 else f"{name}^{count}")
        i = j
    return " ".join(parts)


def word_inverse(word: Word) -> Word:
    return tuple((g, -s) for g, s in reversed(word))


def word_power(word: Word, k: int) -> Word:
    return word_inverse(word) * (-k) if k < 0 else word * k


def commutator(u: Word, v: Word) -> Word:
    return u + v + word_inverse(u) + word_inverse(v)


def gen(name: str, sign: int = 1) -> Word:
    return ((name, sign),)


@dataclass(frozen=True)
class Presentation:
    """Generators plus relator words; convention "left" marks sources whose
    juxtaposition means "left factor acts first" (reversed at evaluation)."""

    name: str
    generators: tuple[str, ...]
    relators: tuple[str, ...]
    convention: str = "right"

    def __post_init__(self):
        for r in self.relators:
            for g, _ in parse_word(r):
                if g not in self.generators:
                    raise ValueError(f"relator {r!r} uses undeclared generator {g!r}")


@dataclass(frozen=True)
class GroupOracle:
    """Capability record: a group with decidable equality, opaque elements."""

    name: str
    identity: Any
    multiply: Callable[[Any, Any], Any]
    invert: Callable[[Any], Any]
    equal: Callable[[Any, Any], bool]


@dataclass(frozen=True)
class RelatorReport:
    presentation: str
    oracle: str
    results: tuple[tuple[str, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.results)


def evaluate_word(
    word: Word, images: dict[str, Any], oracle: GroupOracle, convention: str = "right"
) -> Any:
    letters = tuple(reversed(word)) if convention == "left" else word
    acc = oracle.identity
    for name, sign in letters:
        if name not in images:
            raise MissingImageError(f"no image for generator {name!r}")
        g = images[name] if sign > 0 else oracle.invert(images[name])
        acc = oracle.multiply(acc, g)
    return acc


def check_relators(
    p: Presentation, images: dict[str, Any], oracle: GroupOracle
) -> RelatorReport:
    """Evaluate every relator in the oracle and report equal-to-identity per relator."""
    for g in p.generators:
        if g not in images:
            raise MissingImageError(f"no image for generator {g!r}")
    results = []
    for relator in p.relators:
        value = evaluate_word(parse_word(relator), images, oracle, p.convention)
        results.append((relator, oracle.equal(value, oracle.identity)))
    return RelatorReport(p.name, oracle.name, tuple(results))


# ---------------------------------------------------------------------------
# Built-in presentations
# ---------------------------------------------------------------------------

_A, _B, _Z = gen("a"), gen("b"), gen("z")
_BAB = parse_word("b a b")
_COMM1_INNER = parse_word("a^2 b a b a^2")
_COMM2_LS_INNER = parse_word("a^2 b^2 a^2 b a b a^2 b a^2")
_COMM2_EXT_INNER = parse_word("a^2 b a^2 b a b a^2 b^2 a^2")


def lochak_schneps() -> Presentation:
    """The two-generator presentation of the Ptolemy-Thompson group T."""
    relators = (
        format_word(word_power(_A, 4)),
        format_word(word_power(_B, 3)),
        format_word(word_power(_B + _A, 5)),
        format_word(commutator(_BAB, _COMM1_INNER)),
        format_word(commutator(_BAB, _COMM2_LS_INNER)),
    )
    return Presentation("T_LS", ("a", "b"), relators)


def t_npqrs(n: int, p: int, q: int, r: int = 0, s: int = 0) -> Presentation:
    """The central extension T_{n,p,q,r,s} of T by the central generator z."""
    relators = (
        format_word(word_power(_B + _A, 5) + word_power(_Z, -n)),
        format_word(word_power(_A, 4) + word_power(_Z, -p)),
        format_word(word_power(_B, 3) + word_power(_Z, -q)),
        format_word(commutator(_BAB, _COMM1_INNER) + word_power(_Z, -r)),
        format_word(commutator(_BAB, _COMM2_EXT_INNER) + word_power(_Z, -s)),
        format_word(commutator(_A, _Z)),
        format_word(commutator(_B, _Z)),
    )
    return Presentation(f"T_{n},{p},{q},{r},{s}".replace(",", "_"), ("a", "b", "z"), relators)


def tstar_ab() -> Presentation:
    """The relative abelianization of the braided Ptolemy-Thompson group: T_{1,0,0,0,0}."""
    pres = t_npqrs(1, 0, 0, 0, 0)
    return Presentation("Tstar_ab", pres.generators, pres.relators)


def _d(i: int, n: int, sign: int = 1) -> Word:
    return gen(f"d{(i - 1) % n + 1}", sign)


def _u(i: int, n: int) -> Word:
    # u_i = d_i d_{i+1} d_i^-1 d_{i+1}^-1, written in the source's left convention
    return _d(i, n) + _d(i + 1, n) + word_inverse(_d(i, n)) + word_inverse(_d(i + 1, n))


def braided_houghton(n: int) -> Presentation:
    """The braided-Houghton presentation on the generators d1..dn (left convention).

    The u_i = d_i d_(i+1) d_i^-1 d_(i+1)^-1 are derived words; indices are
    cyclic.  The last relator family takes the conjugation form
    d_j u_i d_j^-1 = u_i u_j u_i^-1.
    """
    if n < 3:
        raise IndexOutOfRangeError("braided Houghton presentations need n >= 3")
    relators: list[str] = []
    seen: set[str] = set()

    def add(word: Word) -> None:
        text = format_word(word)
        if text not in seen:
            seen.add(text)
            relators.append(text)

    add(tuple(letter for i in range(n, 0, -1) for letter in _d(i, n)))
    for subset in _cyclic_triples(n):
        i1, i2, i3 = subset
        w1 = _u(i1, n) + _u(i2, n) + _u(i3, n) + _u(i1, n)
        w2 = _u(i2, n) + _u(i3, n) + _u(i1, n) + _u(i2, n)
        w3 = _u(i3, n) + _u(i1, n) + _u(i2, n) + _u(i3, n)
        add(w1 + word_inverse(w2))
        add(w2 + word_inverse(w3))
    for i in range(1, n + 1):
        v = word_inverse(_d(i - 1, n)) + _u(i, n) + _d(i - 1, n)
        w = _d(i, n) + _u(i, n) + word_inverse(_d(i, n))
        add(v + word_inverse(w))
        add(v + _u(i, n) + v + word_inverse(_u(i, n) + v + _u(i, n)))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            add(_u(i, n) + _u(j, n) + _u(i, n) + word_inverse(_u(j, n) + _u(i, n) + _u(j, n)))
            add(commutator(_d(i, n) + _u(i, n) + word_inverse(_d(i, n)), _u(j, n)))
            if j != (i - 2) % n + 1:
                add(commutator(_d(i, n) + _u(i, n) + word_inverse(_d(i, n)), _d(j, n)))
                conj = _d(j, n) + _u(i, n) + word_inverse(_d(j, n))
                add(conj + word_inverse(_u(i, n) + _u(j, n) + word_inverse(_u(i, n))))
    return Presentation(f"BraidedHoughton_{n}", tuple(f"d{i}" for i in range(1, n + 1)),
                        tuple(relators), convention="left")


def _cyclic_triples(n: int) -> list[tuple[int, int, int]]:
    out = []
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            for z in range(y + 1, n + 1):
                out.extend([(x, y, z), (y, z, x), (z, x, y)])
    return out


def builtin_presentations() -> dict[str, Presentation]:
    return {
        "T_LS": lochak_schneps(),
        "Tstar_ab": tstar_ab(),
        "T_npqrs": t_npqrs(1, 0, 0, 0, 0),
        "BraidedHoughton_3": braided_houghton(3),
        "BraidedHoughton_4": braided_houghton(4),
    }


def chi_formula(n: int, p: int, q: int) -> int:
    """The extension-class coefficient 12n - 15p - 20q (recorded, never verified here)."""
    return 12 * n - 15 * p - 20 * q


# ---------------------------------------------------------------------------
# The Houghton-style permutation model
# ---------------------------------------------------------------------------

CENTER = ("c",)
Point = tuple


def _point_key(x: Point) -> tuple:
    return (0, 0, 0) if x == CENTER else (1, x[0], x[1])


@dataclass(frozen=True)
class HoughtonElement:
    """An eventually-translation bijection of {center} u (rays x Z+).

    offsets[r] is the eventual translation along ray r+1; the finite patch
    overrides it where the map differs (it must, near the center).
    """

    n: int
    offsets: tuple[int, ...]
    patch: tuple[tuple[Point, Point], ...] = ()

    def __post_init__(self):
        if len(self.offsets) != self.n:
            raise ValueError("one offset per ray required")
        cleaned = tuple(
            sorted(
                ((x, y) for x, y in self.patch if self._default(x) != y),
                key=lambda pair: _point_key(pair[0]),
            )
        )
        object.__setattr__(self, "patch", cleaned)
        values = [y for _, y in cleaned]
        if len(set(values)) != len(values):
            raise ValueError("patch is not injective")

    def _default(self, x: Point) -> Point | None:
        if x == CENTER:
            return CENTER
        ray, k = x
        moved = k + self.offsets[ray - 1]
        return (ray, moved) if moved >= 1 else None

    def apply(self, x: Point) -> Point:
        for key, value in self.patch:
            if key == x:
                return value
        image = self._default(x)
        if image is None:
            raise ValueError(f"{x} has no image: element is not a bijection")
        return image

    def __call__(self, x: Point) -> Point:
        return self.apply(x)


def houghton_identity(n: int) -> HoughtonElement:
    return HoughtonElement(n, (0,) * n)


def houghton_generator(n: int, j: int) -> HoughtonElement:
    """The generator d_j: both rays j, j+1 shift one step counterclockwise.

    Ray j feeds the center ((j,1) -> center), the center feeds ray j+1
    (center -> (j+1,1)); far out, ray j translates by -1 and ray j+1 by +1.
    """
    if n < 2 or not 1 <= j <= n:
        raise IndexOutOfRangeError(f"ray {j} of {n}")
    nxt = j % n + 1
    offsets = [0] * n
    offsets[j - 1] -= 1
    offsets[nxt - 1] += 1
    return HoughtonElement(n, tuple(offsets), (((j, 1), CENTER), (CENTER, (nxt, 1))))


def houghton_multiply(g: HoughtonElement, h: HoughtonElement) -> HoughtonElement:
    """(g * h)(x) = g(h(x)): the right factor acts first."""
    if g.n != h.n:
        raise ValueError("ray count mismatch")
    n = g.n
    offsets = tuple(a + b for a, b in zip(g.offsets, h.offsets))
    candidates: set[Point] = {CENTER}
    candidates.update(x for x, _ in h.patch)
    for key, _ in g.patch:
        if key == CENTER:
            continue
        ray, k = key
        pre = k - h.offsets[ray - 1]
        if pre >= 1:
            candidates.add((ray, pre))
    patch = []
    for x in candidates:
        y = g.apply(h.apply(x))
        patch.append((x, y))
    return HoughtonElement(n, offsets, tuple(patch))


def houghton_invert(g: HoughtonElement) -> HoughtonElement:
    offsets = tuple(-o for o in g.offsets)
    patch = [(y, x) for x, y in g.patch]
    return HoughtonElement(g.n, offsets, tuple(patch))


def houghton_equal(g: HoughtonElement, h: HoughtonElement) -> bool:
    return g.n == h.n and g.offsets == h.offsets and g.patch == h.patch


def houghton_oracle(n: int) -> GroupOracle:
    return GroupOracle(
        name=f"Houghton_{n}",
        identity=houghton_identity(n),
        multiply=houghton_multiply,
        invert=houghton_invert,
        equal=houghton_equal,
    )


def houghton_images(n: int) -> dict[str, HoughtonElement]:
    return {f"d{j}": houghton_generator(n, j) for j in range(1, n + 1)}


# ---------------------------------------------------------------------------
# Oracles over the other executable groups
# ---------------------------------------------------------------------------


def symbol_oracle() -> GroupOracle:
    """T-symbols under the symbol calculus (exact word problem)."""
    from .cosimplicial import (
        PERMUTATIONS,
        identity_symbol,
        symbol_equal,
        symbol_invert,
        symbol_multiply,
    )

    return GroupOracle(
        name="tree-pair symbols",
        identity=identity_symbol(PERMUTATIONS),
        multiply=lambda g, h: symbol_multiply(g, h, PERMUTATIONS),
        invert=lambda g: symbol_invert(g, PERMUTATIONS),
        equal=lambda g, h: symbol_equal(g, h, PERMUTATIONS),
    )


def symbol_images() -> dict[str, Any]:
    from .cosimplicial import PERMUTATIONS, identity_symbol
    from .thompson import generators_T

    alpha, beta = generators_T()
    return {"a": alpha, "b": beta, "z": identity_symbol(PERMUTATIONS)}


def tessellation_oracle() -> GroupOracle:
    """Move words acting on marked tessellations; equality via the base orbit."""
    from .ptolemy import act_word, base_tessellation, tessellation_equal

    base = base_tessellation()
    flip_case = str.maketrans("ABab", "abAB")

    def invert(word: str) -> str:
        return word.translate(flip_case)[::-1]

    return GroupOracle(
        name="tessellation action",
        identity="",
        multiply=lambda g, h: g + h,
        invert=invert,
        equal=lambda g, h: tessellation_equal(act_word(base, g + invert(h)), base),
    )


def tessellation_images() -> dict[str, str]:
    return {"a": "A", "b": "B", "z": ""}
