import random

import pytest

from treegroups.errors import (
    DomainViolationError,
    EdgeNotPresentError,
    NotStabilizingError,
)
from treegroups.kernel import Frac, INF, is_unimodular
from treegroups.ptolemy import (
    MarkedTessellation,
    act_flip_label,
    act_word,
    base_label_state,
    base_tessellation,
    canonicalize,
    cayley_ball,
    char_map,
    edge,
    edge_present,
    flip,
    format_edge,
    from_json,
    labelled_act,
    move_A,
    move_B,
    render_svg,
    stabilizer_permutation,
    tessellation_equal,
    to_json,
    triangle,
)


def inv_word(word: str) -> str:
    return word.translate(str.maketrans("ABab", "abAB"))[::-1]


def comm(u: str, v: str) -> str:
    return u + v + inv_word(u) + inv_word(v)


RELATORS = ["AAAA", "BBB", "BABABABABA", comm("BAB", "AABABAA"), comm("BAB", "AABBAABABAABAA")]


class TestBase:
    def test_doe(self):
        base = base_tessellation()
        assert base.doe == (Frac(0), INF)
        assert base.doe_edge == edge(Frac(0), INF)

    def test_doe_in_both_triangles(self):
        base = base_tessellation()
        assert len(base.triangles_on(base.doe_edge)) == 2

    def test_boundary_unimodular(self):
        base = base_tessellation()
        for e in base.support_edges():
            a, b = tuple(e)
            assert is_unimodular(a, b)


class TestFlip:
    def test_flip_doe_gives_diagonal(self):
        base = base_tessellation()
        f = flip(base, base.doe_edge)
        assert f.doe_edge == edge(Frac(-1), Frac(1))
        # positively oriented frame: new doe runs from 1 (ccw side) to -1
        assert f.doe == (Frac(1), Frac(-1))

    def test_flip_twice_non_doe(self):
        base = base_tessellation()
        e = edge(Frac(0), Frac(1))
        once = flip(base, e)
        new_diag = next(iter(once.support_edges() - base.support_edges()))
        again = flip(once, new_diag)
        assert tessellation_equal(again, base)

    def test_flip_fringe_edge_enlarges_support(self):
        base = base_tessellation()
        e = edge(Frac(1), Frac(2))
        assert edge_present(base, e)
        flipped = flip(base, e)
        assert len(flipped.triangles) > len(base.triangles)

    def test_materialized_fringe_unimodular(self):
        base = base_tessellation()
        flipped = flip(base, edge(Frac(1), Frac(2)))
        # the quadrilateral of {1,2} joins its mediant 3/2 to its co-mediant inf
        diag = edge(Frac(3, 2), INF)
        assert diag in flipped.support_edges()
        for e in flipped.support_edges():
            a, b = tuple(e)
            if e != diag:
                assert is_unimodular(a, b)

    def test_flipped_edge_not_present(self):
        base = base_tessellation()
        gone = flip(base, base.doe_edge)
        with pytest.raises(EdgeNotPresentError):
            flip(gone, edge(Frac(0), INF))

    def test_non_edge_not_present(self):
        with pytest.raises(EdgeNotPresentError):
            flip(base_tessellation(), edge(Frac(1, 3), Frac(2, 3)))


class TestMoves:
    def test_orders(self):
        base = base_tessellation()
        assert tessellation_equal(act_word(base, "BBB"), base)
        assert tessellation_equal(act_word(base, "AAAA"), base)
        assert not tessellation_equal(act_word(base, "A"), base)
        assert not tessellation_equal(act_word(base, "BB"), base)

    def test_pentagon_unlabelled(self):
        base = base_tessellation()
        assert tessellation_equal(act_word(base, "BABABABABA"), base)

    @pytest.mark.parametrize("word", RELATORS)
    def test_all_relators(self, word):
        base = base_tessellation()
        assert tessellation_equal(act_word(base, word), base)

    def test_relators_from_random_starts(self):
        rng = random.Random(41)
        base = base_tessellation()
        for _ in range(5):
            w = "".join(rng.choice("ABab") for _ in range(rng.randint(1, 4)))
            t = act_word(base, w)
            for word in RELATORS:
                assert tessellation_equal(act_word(t, word), t)

    def test_inverses(self):
        base = base_tessellation()
        t = act_word(base, "BAAB")
        assert tessellation_equal(act_word(t, inv_word("BAAB")), base)


class TestCharMap:
    def test_label_zero_is_doe(self):
        base = base_tessellation()
        assert char_map(base, Frac(0)) == base.doe_edge

    def test_label_one_excluded(self):
        base = base_tessellation()
        for q in (Frac(1), Frac(-1)):
            with pytest.raises(DomainViolationError):
                char_map(base, q)

    def test_base_labels_are_coordinates(self):
        # on the base tessellation the labeling reproduces the vertex coordinates,
        # so the edge labelled q is the entry edge of the vertex q
        base = base_tessellation()
        assert char_map(base, Frac(2)) == edge(Frac(1), INF)
        assert char_map(base, Frac(1, 2)) == edge(Frac(0), Frac(1))
        assert char_map(base, Frac(-2)) == edge(Frac(-1), INF)
        assert char_map(base, Frac(5, 7)) == edge(Frac(2, 3), Frac(3, 4))

    def test_depth_cap(self):
        from treegroups.errors import LabelNotReachableError

        with pytest.raises(LabelNotReachableError):
            char_map(base_tessellation(), Frac(89, 144), depth_cap=3)

    def test_act_zero_flips_doe(self):
        base = base_tessellation()
        assert tessellation_equal(act_flip_label(base, Frac(0)), move_A(base))

    def test_square_of_labelled_flip(self):
        base = base_tessellation()
        t1 = act_flip_label(base, Frac(2))
        diag = next(iter(t1.support_edges() - base.support_edges()))
        # the fresh labeling of t1 puts 1/2 on the new diagonal; acting there undoes the flip
        assert char_map(t1, Frac(1, 2)) == diag
        assert tessellation_equal(act_flip_label(t1, Frac(1, 2)), base)

    def test_remote_flip_island_roundtrip(self):
        # flipping a remote Farey edge creates a support island; the labeling
        # walks the fringe to reach it, and acting at the diagonal's label undoes it
        base = base_tessellation()
        t = flip(base, edge(Frac(2), Frac(5, 2)))
        diag = edge(Frac(3), Frac(7, 3))
        assert len(t.triangles_on(diag)) == 2
        assert char_map(t, Frac(8, 3)) == diag
        assert tessellation_equal(act_flip_label(t, Frac(8, 3)), base)

    def test_disjoint_flips_commute(self):
        base = base_tessellation()
        q1, q2 = Frac(2), Frac(-2)
        one = act_flip_label(act_flip_label(base, q1), q2)
        other = act_flip_label(act_flip_label(base, q2), q1)
        assert tessellation_equal(one, other)


class TestLabelled:
    def test_empty_word(self):
        assert stabilizer_permutation("").is_identity()

    def test_a4_identity_labels(self):
        assert stabilizer_permutation("AAAA").is_identity()

    def test_pentagon_transposition(self):
        perm = stabilizer_permutation("BABABABABA")
        moved = [i for i in range(1, perm.degree + 1) if perm(i) != i]
        assert len(moved) == 2
        i, j = moved
        assert perm(i) == j and perm(j) == i
        # the two diagonals of the pentagon: the doe {0,inf} and {-1,0}
        state = base_label_state(base_tessellation())
        labels = state.as_dict()
        assert {labels[edge(Frac(0), INF)], labels[edge(Frac(-1), Frac(0))]} == {i, j}

    def test_non_pentagon_relators_identity_labels(self):
        assert stabilizer_permutation("BBB").is_identity()
        assert stabilizer_permutation(comm("BAB", "AABABAA")).is_identity()
        assert stabilizer_permutation(comm("BAB", "AABBAABABAABAA")).is_identity()

    def test_not_stabilizing(self):
        with pytest.raises(NotStabilizingError):
            stabilizer_permutation("A")

    def test_pentagon_alternating_label_flips(self):
        # for edges e, f sharing a triangle, flipping alternately at the chords
        # carrying their labels five times returns the tessellation with the two
        # labels exchanged and everything else fixed
        from treegroups.ptolemy import labelled_flip

        rng = random.Random(44)
        base = base_tessellation()
        for _ in range(8):
            w = "".join(rng.choice("ABab") for _ in range(rng.randint(0, 3)))
            t0 = canonicalize(act_word(base, w))
            pairs = [
                (e, f)
                for tri in t0.triangles
                for e in t0.support_edges()
                for f in t0.support_edges()
                if e != f and e <= tri and f <= tri
                and len(t0.triangles_on(e)) == 2 and len(t0.triangles_on(f)) == 2
            ]
            if not pairs:
                continue
            e, f = rng.choice(pairs)
            state = base_label_state(t0)
            le, lf = state.as_dict()[e], state.as_dict()[f]
            t, s = t0, state
            for k in range(5):
                want = le if k % 2 == 0 else lf
                chord = next(c for c, l in s.labels if l == want)
                t, s = labelled_flip(t, s, chord)
            assert tessellation_equal(t, t0)
            final = s.as_dict()
            assert final[e] == lf and final[f] == le
            for chord, label in state.labels:
                if chord not in (e, f):
                    assert final[chord] == label

    def test_pentagon_from_random_tessellations(self):
        rng = random.Random(42)
        base = base_tessellation()
        for _ in range(8):
            w = "".join(rng.choice("ABab") for _ in range(rng.randint(0, 4)))
            t = act_word(base, w)
            perm = stabilizer_permutation("BABABABABA", t)
            moved = [i for i in range(1, perm.degree + 1) if perm(i) != i]
            assert len(moved) == 2
            assert perm(moved[0]) == moved[1]


class TestCanonical:
    def test_base_fixed(self):
        base = base_tessellation()
        assert canonicalize(base).triangles == base.triangles

    def test_flip_unflip(self):
        base = base_tessellation()
        e = edge(Frac(0), Frac(1))
        once = flip(base, e)
        diag = next(iter(once.support_edges() - base.support_edges()))
        assert tessellation_equal(flip(once, diag), base)

    def test_idempotent(self):
        t = act_word(base_tessellation(), "BAABAB")
        assert canonicalize(canonicalize(t)) == canonicalize(t)


class TestCayleyBall:
    def test_small_radii(self):
        spheres, adjacency = cayley_ball(2)
        assert spheres == [1, 4, 9]
        # every vertex expanded during BFS emits one edge per generator
        assert sum(len(v) for v in adjacency.values()) == 4 * (1 + 4)

    def test_radius_three_fixture(self):
        spheres, _ = cayley_ball(3)
        assert spheres == [1, 4, 9, 20]


class TestCrossModel:
    def test_word_verdicts_match_symbols(self):
        from treegroups.cosimplicial import (
            PERMUTATIONS,
            identity_symbol,
            is_identity_symbol,
            symbol_invert,
            symbol_multiply,
        )
        from treegroups.thompson import generators_T

        alpha, beta = generators_T()
        table = {
            "A": alpha,
            "B": beta,
            "a": symbol_invert(alpha, PERMUTATIONS),
            "b": symbol_invert(beta, PERMUTATIONS),
        }
        rng = random.Random(43)
        base = base_tessellation()
        for _ in range(25):
            w = "".join(rng.choice("ABab") for _ in range(rng.randint(0, 8)))
            sym = identity_symbol(PERMUTATIONS)
            for ch in w:
                sym = symbol_multiply(sym, table[ch], PERMUTATIONS)
            symbol_trivial = is_identity_symbol(sym, PERMUTATIONS)
            tess_trivial = tessellation_equal(act_word(base, w), base)
            assert symbol_trivial == tess_trivial


class TestSerialization:
    def test_json_roundtrip(self):
        t = act_word(base_tessellation(), "BA")
        assert tessellation_equal(from_json(to_json(t)), t)
        assert from_json(to_json(t)).doe == t.doe

    def test_render_base(self):
        svg = render_svg(base_tessellation())
        assert svg.startswith("<?xml")
        assert svg.count('class="edge') == 5
        assert "marker-end" in svg

    def test_render_flipped(self):
        svg = render_svg(act_word(base_tessellation(), "AB"))
        assert "<svg" in svg and "</svg>" in svg
