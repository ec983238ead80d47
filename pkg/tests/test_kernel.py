import pytest
from hypothesis import given, strategies as st

from treegroups.errors import EqualArgumentsError
from treegroups.kernel import (
    INF,
    Dyadic,
    Frac,
    FreeWord,
    Permutation,
    ccw,
    comediant,
    free_reduce,
    is_unimodular,
    mediant,
)


class TestFrac:
    def test_normalization(self):
        assert Frac(2, 4) == Frac(1, 2)
        assert Frac(-3, -6) == Frac(1, 2)
        assert Frac(3, -6) == Frac(-1, 2)
        assert Frac(-1, 0) == INF
        with pytest.raises(ValueError):
            Frac(0, 0)

    def test_str_roundtrip(self):
        for text in ["1/2", "-3/4", "inf", "7", "0"]:
            assert str(Frac.parse(text)) == text

    def test_arithmetic(self):
        assert Frac(1, 2) + Frac(1, 3) == Frac(5, 6)
        assert Frac(1, 2) * 2 == Frac(1)
        assert Frac(3, 4) - Frac(1, 4) == Frac(1, 2)
        assert Frac(1, 2) / Frac(1, 4) == Frac(2)
        with pytest.raises(ValueError):
            INF + Frac(1)


class TestMediant:
    def test_labeling_seed_values(self):
        # the two seed values of the vertex labeling rule
        assert mediant(Frac(0), INF) == Frac(1)
        assert mediant(Frac(0), Frac(1)) == Frac(1, 2)

    def test_negative(self):
        assert mediant(Frac(-1), Frac(0)) == Frac(-1, 2)
        assert mediant(Frac(-1), INF) == Frac(-2)

    def test_equal_arguments(self):
        with pytest.raises(EqualArgumentsError):
            mediant(Frac(1, 2), Frac(1, 2))

    @given(
        st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50)
    )
    def test_mediant_between(self, an, ad, bn, bd):
        a, b = Frac(an, ad), Frac(bn, bd)
        if a == b:
            return
        m = mediant(a, b)
        lo, hi = min(a, b), max(a, b)
        assert lo < m < hi

    @given(st.integers(-30, 30), st.integers(1, 30))
    def test_mediant_between_in_circular_order(self, n, d):
        a = Frac(n, d)
        m = mediant(a, INF)
        if m == a:
            return
        # between a and inf on the arc not containing 0-side rationals
        if a >= Frac(0):
            assert ccw(a, m, INF)
        else:
            assert ccw(INF, m, a)

    @given(st.integers(-30, 30), st.integers(1, 30))
    def test_mediant_of_unimodular_stays_unimodular(self, n, d):
        a = Frac(n, d)
        for b in (INF, Frac(n + 1, d), a + 1):
            if a == b:
                continue
            if is_unimodular(a, b):
                assert is_unimodular(a, mediant(a, b))


class TestUnimodular:
    def test_examples(self):
        assert is_unimodular(Frac(0), INF)
        assert is_unimodular(Frac(0), Frac(1, 2))
        # determinant 1*3 - 2*3 = -3
        assert not is_unimodular(Frac(1, 3), Frac(2, 3))

    def test_comediant(self):
        assert comediant(Frac(0), INF) == Frac(-1)
        assert comediant(Frac(1), Frac(1, 2)) == Frac(0)


class TestCcw:
    def test_basic(self):
        assert ccw(Frac(0), Frac(1), INF)
        assert not ccw(Frac(0), INF, Frac(1))
        assert ccw(INF, Frac(-1), Frac(0))
        assert ccw(Frac(1), INF, Frac(-1))

    @given(st.permutations([Frac(0), Frac(1), Frac(-2), INF]))
    def test_rotation_invariance(self, pts):
        a, b, c = pts[:3]
        assert ccw(a, b, c) == ccw(b, c, a) == ccw(c, a, b)
        assert ccw(a, b, c) != ccw(b, a, c)


class TestDyadic:
    def test_normalization(self):
        assert Dyadic(2, 1) == Dyadic(1, 0)
        assert Dyadic(4, 3) == Dyadic(1, 1)
        assert str(Dyadic(3, 2)) == "3/2^2"
        assert str(Dyadic(2, 0)) == "2"

    def test_frac_roundtrip(self):
        d = Dyadic(5, 4)
        assert Dyadic.from_frac(d.as_frac()) == d
        with pytest.raises(ValueError):
            Dyadic.from_frac(Frac(1, 3))


class TestPermutation:
    def test_compose_right_first(self):
        g = Permutation((2, 1, 3))
        h = Permutation((1, 3, 2))
        # (g*h)(x) = g(h(x))
        assert (g * h).images == (2, 3, 1)

    def test_parse_str(self):
        p = Permutation.parse("[2,3,1]")
        assert p.images == (2, 3, 1)
        assert str(p) == "[2,3,1]"

    def test_cyclic_shift(self):
        assert Permutation((2, 3, 1)).cyclic_shift() == 1
        assert Permutation.identity(4).cyclic_shift() == 0
        assert Permutation((2, 1, 3)).cyclic_shift() is None

    @given(st.integers(1, 12), st.randoms(use_true_random=False))
    def test_group_axioms(self, n, rng):
        def rand_perm():
            images = list(range(1, n + 1))
            rng.shuffle(images)
            return Permutation(tuple(images))

        ga, gb, gc = rand_perm(), rand_perm(), rand_perm()
        assert (ga * gb) * gc == ga * (gb * gc)
        assert ga * ga.inv() == Permutation.identity(n)
        assert ga.inv() * ga == Permutation.identity(n)


class TestFreeWord:
    def test_cancellation(self):
        assert FreeWord(((1, 1), (1, -1))).letters == ()
        assert FreeWord(((1, 1), (2, 1), (2, -1), (1, 1))).letters == ((1, 1), (1, 1))

    def test_idempotent(self):
        w = FreeWord(((1, 1), (2, -1), (1, 1)))
        assert free_reduce(w) == w

    @given(st.lists(st.tuples(st.integers(1, 4), st.sampled_from([1, -1])), max_size=30))
    def test_reduce_idempotent_and_shorter(self, letters):
        w = free_reduce(tuple(letters))
        assert free_reduce(w) == w
        assert len(w) <= len(letters)

    @given(st.lists(st.tuples(st.integers(1, 4), st.sampled_from([1, -1])), max_size=20))
    def test_inverse_cancels(self, letters):
        w = FreeWord(tuple(letters))
        assert (w * w.inv()).letters == ()
