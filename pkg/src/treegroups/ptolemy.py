"""Marked Farey-type tessellations of the disk and the flip calculus on them.

A tessellation is stored as a finite support of ideal triangles (vertices are
rationals or inf on the boundary circle) plus a distinguished oriented edge
(doe); outside the support it coincides with the Farey tessellation, whose
triangles join a unimodular pair {a, b} to their mediant and co-mediant.  Flips
at edges beyond the support first materialize the Farey triangles they need.

All geometry is exact: the circular order of Q u {inf} stands in for disk
angles, counterclockwise meaning increasing labels.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, replace

from .errors import (
    DomainViolationError,
    EdgeNotPresentError,
    LabelNotReachableError,
    NotStabilizingError,
)
from .kernel import Frac, INF, Permutation, ccw, comediant, is_unimodular, mediant

Edge = frozenset
Triangle = frozenset


def edge(a: Frac, b: Frac) -> Edge:
    return frozenset((a, b))


def triangle(a: Frac, b: Frac, c: Frac) -> Triangle:
    return frozenset((a, b, c))


def _vkey(v: Frac) -> tuple[int, int]:
    return (v.num, v.den)


def _sorted_vertices(vs) -> tuple[Frac, ...]:
    return tuple(sorted(vs, key=_vkey))


@dataclass(frozen=True)
class MarkedTessellation:
    """Finite triangulated support plus a distinguished oriented edge."""

    triangles: frozenset
    doe: tuple[Frac, Frac]

    @property
    def doe_edge(self) -> Edge:
        return edge(*self.doe)

    def support_edges(self) -> set:
        out: set = set()
        for tri in self.triangles:
            a, b, c = tuple(tri)
            out.update((edge(a, b), edge(a, c), edge(b, c)))
        return out

    def triangles_on(self, e: Edge) -> list:
        return [tri for tri in self.triangles if e <= tri]


def base_tessellation() -> MarkedTessellation:
    """The marked Farey tessellation: seed triangles {0, inf, -1} and {0, inf, 1}, doe 0 -> inf."""
    zero, one = Frac(0), Frac(1)
    return MarkedTessellation(
        frozenset({triangle(zero, INF, Frac(-1)), triangle(zero, INF, one)}),
        (zero, INF),
    )


def _chords_cross(e: Edge, f: Edge) -> bool:
    a, b = tuple(e)
    c, d = tuple(f)
    if len({a, b, c, d}) < 4:
        return False
    return ccw(a, c, b) != ccw(a, d, b)


def edge_present(t: MarkedTessellation, e: Edge) -> bool:
    """True iff e is an edge of the actual (infinite) tessellation."""
    if e in t.support_edges():
        return True
    a, b = tuple(e)
    if a == b or not is_unimodular(a, b):
        return False
    return not any(_chords_cross(e, s) for s in t.support_edges())


def _farey_apex(a: Frac, b: Frac, side: bool) -> Frac:
    """The Farey neighbor of edge {a, b} with ccw(a, apex, b) == side."""
    m, c = mediant(a, b), comediant(a, b)
    if ccw(a, m, b) == side:
        return m
    return c


def _apex_on_side(t: MarkedTessellation, a: Frac, b: Frac, side: bool):
    """Apex w of the actual triangle on the side ccw(a, w, b) == side of edge {a, b}.

    Returns (apex, support triangle or None); None means the triangle is a
    Farey fringe triangle not materialized in the support.
    """
    e = edge(a, b)
    for tri in t.triangles_on(e):
        (w,) = tri - e
        if ccw(a, w, b) == side:
            return w, tri
    return _farey_apex(a, b, side), None


def _materialize(t: MarkedTessellation, e: Edge) -> MarkedTessellation:
    """Add the Farey fringe triangles adjacent to e that the support lacks."""
    a, b = tuple(e)
    new = set(t.triangles)
    for side in (True, False):
        apex, tri = _apex_on_side(t, a, b, side)
        if tri is None:
            new.add(triangle(a, b, apex))
    return replace(t, triangles=frozenset(new))


def flip(t: MarkedTessellation, e: Edge) -> MarkedTessellation:
    """Flip the edge e: replace the diagonal of its quadrilateral by the other one.

    If e is the doe, the new doe is the new diagonal oriented so that the frame
    (old doe, new doe) is positively oriented; otherwise the doe is unchanged.
    """
    if not edge_present(t, e):
        raise EdgeNotPresentError(f"edge {format_edge(e)} is not in the tessellation")
    t = _materialize(t, e)
    tris = t.triangles_on(e)
    (r,) = tris[0] - e
    (s,) = tris[1] - e
    a, b = tuple(e)
    new_triangles = (set(t.triangles) - set(tris)) | {triangle(r, s, a), triangle(r, s, b)}
    doe = t.doe
    if e == t.doe_edge:
        u, v = t.doe
        start = r if ccw(u, r, v) else s
        end = s if start is r else r
        doe = (start, end)
    return MarkedTessellation(frozenset(new_triangles), doe)


def move_A(t: MarkedTessellation) -> MarkedTessellation:
    """Flip at the doe (with the quadrilateral orientation rule for the new doe)."""
    return flip(t, t.doe_edge)


def move_B(t: MarkedTessellation) -> MarkedTessellation:
    """Rotate the doe inside its left-adjacent triangle: x -> y becomes y -> z.

    The left-adjacent triangle is the one whose vertices (x, y, z) are in
    counterclockwise order, i.e. its apex z has ccw(x, z, y) false.
    """
    x, y = t.doe
    z, tri = _apex_on_side(t, x, y, False)
    if tri is None:
        t = replace(t, triangles=frozenset(set(t.triangles) | {triangle(x, y, z)}))
    return replace(t, doe=(y, z))


def _parse_word(word: str) -> list[str]:
    tokens = word.split()
    out: list[str] = []
    if len(tokens) > 1 or (tokens and any(ch in tokens[0] for ch in "^-")):
        for tok in tokens:
            if tok in ("A", "B"):
                out.append(tok)
            elif tok in ("A^-1", "A-1"):
                out.append("a")
            elif tok in ("B^-1", "B-1"):
                out.append("b")
            else:
                raise ValueError(f"bad move token {tok!r}")
        return out
    for ch in word.strip():
        if ch in "ABab":
            out.append(ch)
        else:
            raise ValueError(f"bad move letter {ch!r}")
    return out


def act_word(t: MarkedTessellation, word: str) -> MarkedTessellation:
    """Apply a word over A, B (inverses: a = A^3, b = B^2); the rightmost letter acts first."""
    for letter in reversed(_parse_word(word)):
        if letter == "A":
            t = move_A(t)
        elif letter == "a":
            t = move_A(move_A(move_A(t)))
        elif letter == "B":
            t = move_B(t)
        else:
            t = move_B(move_B(t))
    return t


# ---------------------------------------------------------------------------
# The characteristic map: labeling vertices by the mediant recursion
# ---------------------------------------------------------------------------

Rep = tuple[int, int]


def _rep_label(rep: Rep) -> Frac:
    return INF if rep[1] == 0 else Frac(rep[0], rep[1])


def _target_strictly_inside(target: Frac, r1: Rep, r2: Rep) -> bool:
    """Is target inside the open Stern-Brocot interval spanned by the reps r1, r2?

    Every label generated beyond a fringe edge with endpoint reps r1, r2 is a
    combination c1*r1 + c2*r2 with c1, c2 >= 1, hence strictly between them in
    the projective order; the sign test below expresses exactly that.
    """
    def side(r: Rep) -> int:
        return target.num * r[1] - target.den * r[0]

    s1, s2 = side(r1), side(r2)
    return (s1 > 0 > s2) or (s1 < 0 < s2)


def _label_search(t: MarkedTessellation, target: Frac, depth_cap: int) -> Edge:
    """Walk the labeling recursion from the doe until the vertex labelled target appears.

    Returns the entry edge of that vertex: the edge whose far-side opposite
    vertex carries the label, which is exactly the characteristic map's value.
    """
    u, v = t.doe
    support = set(t.triangles)
    visited_support: set = set()
    # chasing a support island through the Farey fringe takes at most this long
    island_slack = max(
        (abs(x.num) + x.den for tri in support for x in tri), default=2
    )
    cap = depth_cap + island_slack
    queue: deque = deque()
    queue.append((u, (0, 1), v, (1, 0), True, 0))
    queue.append((u, (0, 1), v, (-1, 0), False, 0))
    while queue:
        a, ra, b, rb, side, depth = queue.popleft()
        if depth > cap:
            continue
        apex, tri = _apex_on_side(t, a, b, side)
        rep = (ra[0] + rb[0], ra[1] + rb[1])
        if _rep_label(rep) == target:
            return edge(a, b)
        if tri is not None:
            visited_support.add(tri)
        in_fringe = tri is None
        next_depth = depth + (1 if in_fringe else 0)
        for (c, rc), (d, rd) in (((a, ra), (apex, rep)), ((apex, rep), (b, rb))):
            third = ({a, b, apex} - {c, d}).pop()
            child_side = not ccw(c, third, d)
            if in_fringe and not (
                _target_strictly_inside(target, rc, rd)
                or _island_beyond(c, d, child_side, support - visited_support)
            ):
                continue
            queue.append((c, rc, d, rd, child_side, next_depth))
    raise LabelNotReachableError(f"label {target} not reached within depth {depth_cap}")


def _island_beyond(c: Frac, d: Frac, side: bool, remaining: set) -> bool:
    for tri in remaining:
        for w in tri:
            if w != c and w != d and ccw(c, w, d) == side:
                return True
    return False


def char_map(t: MarkedTessellation, q: Frac, depth_cap: int = 64) -> Edge:
    """The edge whose opposite vertex (away from the doe) carries label q; label 0 is the doe."""
    if q == Frac(1) or q == Frac(-1):
        raise DomainViolationError("labels -1 and 1 name the doe triangles; the domain excludes them")
    if q.is_infinite:
        raise DomainViolationError("inf labels the doe endpoint, not an edge")
    if q == Frac(0):
        return t.doe_edge
    return _label_search(t, q, depth_cap)


def act_flip_label(t: MarkedTessellation, q: Frac, depth_cap: int = 64) -> MarkedTessellation:
    """Flip at the edge labelled q: the Ptolemy monoid action of the rational q."""
    return flip(t, char_map(t, q, depth_cap))


# ---------------------------------------------------------------------------
# Canonical form, equality and enumeration
# ---------------------------------------------------------------------------


def _is_farey_triangle(tri: Triangle) -> bool:
    a, b, c = tuple(tri)
    return is_unimodular(a, b) and is_unimodular(a, c) and is_unimodular(b, c)


def canonicalize(t: MarkedTessellation) -> MarkedTessellation:
    """Drop Farey triangles (they are implied by the fringe), keeping the doe's two; idempotent."""
    keep = {tri for tri in t.triangles if not _is_farey_triangle(tri)}
    stripped = replace(t, triangles=frozenset(keep))
    a, b = t.doe
    for side in (True, False):
        apex, tri = _apex_on_side(stripped, a, b, side)
        keep.add(tri if tri is not None else triangle(a, b, apex))
    return replace(t, triangles=frozenset(keep))


def tessellation_key(t: MarkedTessellation) -> tuple:
    c = canonicalize(t)
    tris = tuple(sorted(tuple(_vkey(v) for v in _sorted_vertices(tri)) for tri in c.triangles))
    return (tris, _vkey(c.doe[0]), _vkey(c.doe[1]))


def tessellation_equal(a: MarkedTessellation, b: MarkedTessellation) -> bool:
    return tessellation_key(a) == tessellation_key(b)


def cayley_ball(radius: int) -> tuple[list[int], dict]:
    """BFS ball over the moves {A, A^-1, B, B^-1} from the base tessellation.

    Returns sphere sizes per distance and the adjacency list on canonical keys:
    a ball in the Cayley graph of the Ptolemy group.
    """
    base = base_tessellation()
    start = tessellation_key(base)
    dist = {start: 0}
    frontier = [base]
    spheres = [1]
    adjacency: dict = {start: []}
    for r in range(1, radius + 1):
        new_frontier = []
        count = 0
        for t in frontier:
            t_key = tessellation_key(t)
            for move in ("A", "a", "B", "b"):
                image = act_word(t, move)
                key = tessellation_key(image)
                adjacency[t_key].append(key)
                if key not in dist:
                    dist[key] = r
                    adjacency[key] = []
                    new_frontier.append(image)
                    count += 1
        spheres.append(count)
        frontier = new_frontier
    return spheres, adjacency


# ---------------------------------------------------------------------------
# Labelled tessellations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeLabelState:
    """Integer labels on finitely many edges; untouched edges are named lazily on first flip."""

    labels: tuple
    initial: tuple
    next_fresh: int

    def as_dict(self) -> dict:
        return dict(self.labels)


def base_label_state(t: MarkedTessellation) -> EdgeLabelState:
    edges = sorted(t.support_edges(), key=lambda e: tuple(_vkey(v) for v in _sorted_vertices(e)))
    labels = tuple((e, i + 1) for i, e in enumerate(edges))
    return EdgeLabelState(labels, labels, len(edges) + 1)


def labelled_flip(t: MarkedTessellation, state: EdgeLabelState, e: Edge):
    """Flip transporting the flipped edge's label onto the new diagonal."""
    labels = dict(state.labels)
    initial = dict(state.initial)
    fresh = state.next_fresh
    if e not in labels:
        labels[e] = fresh
        initial[e] = fresh
        fresh += 1
    t = _materialize(t, e)
    tris = t.triangles_on(e)
    (r,) = tris[0] - e
    (s,) = tris[1] - e
    t2 = flip(t, e)
    labels[edge(r, s)] = labels.pop(e)
    return t2, EdgeLabelState(tuple(labels.items()), tuple(initial.items()), fresh)


def labelled_act(t: MarkedTessellation, state: EdgeLabelState, word: str):
    """Act by a move word, transporting edge labels through every flip."""
    for letter in reversed(_parse_word(word)):
        if letter in ("A", "a"):
            for _ in range(1 if letter == "A" else 3):
                t, state = labelled_flip(t, state, t.doe_edge)
        else:
            t = move_B(t) if letter == "B" else move_B(move_B(t))
    return t, state


def stabilizer_permutation(word: str, t: MarkedTessellation | None = None) -> Permutation:
    """The eventually trivial label permutation of a word that fixes t (default: base).

    Raises NotStabilizingError when the word moves the tessellation.
    """
    start = canonicalize(base_tessellation() if t is None else t)
    state0 = base_label_state(start)
    final, state1 = labelled_act(start, state0, word)
    if not tessellation_equal(final, start):
        raise NotStabilizingError(f"word {word!r} does not fix the tessellation")
    initial = dict(state1.initial)
    images = {}
    for e, fin in state1.labels:
        if e not in initial:
            raise NotStabilizingError("a transported label rests on an edge with no initial name")
        images[initial[e]] = fin
    n = state1.next_fresh - 1
    return Permutation(tuple(images.get(i, i) for i in range(1, n + 1)))


# ---------------------------------------------------------------------------
# Serialization and rendering
# ---------------------------------------------------------------------------


def format_edge(e: Edge) -> str:
    a, b = _sorted_vertices(e)
    return f"{{{a},{b}}}"


def to_json(t: MarkedTessellation) -> str:
    tris = sorted([str(v) for v in _sorted_vertices(tri)] for tri in t.triangles)
    return json.dumps({"triangles": tris, "doe": [str(t.doe[0]), str(t.doe[1])]})


def from_json(text: str) -> MarkedTessellation:
    data = json.loads(text)
    tris = frozenset(triangle(*(Frac.parse(v) for v in row)) for row in data["triangles"])
    u, v = (Frac.parse(x) for x in data["doe"])
    return MarkedTessellation(tris, (u, v))


def _disk_point(v: Frac) -> complex:
    """Cayley transform (x - i)/(x + i) sending the label line to the unit circle."""
    if v.is_infinite:
        return complex(1.0, 0.0)
    x = v.num / v.den
    return (x - 1j) / (x + 1j)


def _arc_path(p: complex, q: complex) -> str:
    """SVG path for the hyperbolic geodesic between two boundary points (y axis flipped)."""
    if abs(p + q) < 1e-9:
        return f"M {p.real:.5f} {-p.imag:.5f} L {q.real:.5f} {-q.imag:.5f}"
    c = 2 * (p + q) / abs(p + q) ** 2
    r = math.sqrt(abs(c) ** 2 - 1)
    a1 = math.atan2((p - c).imag, (p - c).real)
    a2 = math.atan2((q - c).imag, (q - c).real)
    delta_ccw = (a2 - a1) % (2 * math.pi)
    mid_ccw = c + r * complex(math.cos(a1 + delta_ccw / 2), math.sin(a1 + delta_ccw / 2))
    # the geodesic is the arc bulging toward the disk center; a math-ccw arc
    # runs with sweep flag 0 once the y axis is flipped for SVG
    sweep = 0 if abs(mid_ccw) < 1.0 else 1
    return (
        f"M {p.real:.5f} {-p.imag:.5f} A {r:.5f} {r:.5f} 0 0 {sweep} "
        f"{q.real:.5f} {-q.imag:.5f}"
    )


def render_svg(t: MarkedTessellation) -> str:
    """SVG 1.1 disk picture: vertices on the unit circle, edges as orthogonal arcs, doe arrowed."""
    c = canonicalize(t)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="-1.05 -1.05 2.1 2.1" width="600" height="600">',
        "<defs><marker id='doehead' markerWidth='8' markerHeight='8' refX='4' refY='2' "
        "orient='auto'><path d='M 0 0 L 4 2 L 0 4 z' fill='crimson'/></marker></defs>",
        '<circle cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.008"/>',
    ]
    doe_e = c.doe_edge
    for e in sorted(c.support_edges(), key=lambda e: tuple(_vkey(v) for v in _sorted_vertices(e))):
        if e == doe_e:
            continue
        a, b = _sorted_vertices(e)
        parts.append(
            f'<path class="edge" d="{_arc_path(_disk_point(a), _disk_point(b))}" '
            'fill="none" stroke="steelblue" stroke-width="0.01"/>'
        )
    u, v = c.doe
    parts.append(
        f'<path class="edge doe" d="{_arc_path(_disk_point(u), _disk_point(v))}" fill="none" '
        'stroke="crimson" stroke-width="0.014" marker-end="url(#doehead)"/>'
    )
    for vertex in sorted({w for tri in c.triangles for w in tri}, key=_vkey):
        p = _disk_point(vertex)
        parts.append(
            f'<circle cx="{p.real:.5f}" cy="{-p.imag:.5f}" r="0.015" fill="black">'
            f"<title>{vertex}</title></circle>"
        )
    parts.append("</svg>")
    return "\n".join(parts)
