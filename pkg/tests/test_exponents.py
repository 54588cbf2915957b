from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qopoly.exponents import (
    INF,
    Comparison,
    ComparabilityError,
    compare,
    dot,
    minimum,
    pareto_minimal,
    rat,
    vec,
)


def F(p, q=1):
    return Fraction(p, q)


class TestCompare:
    def test_strictly_below(self):
        assert compare(vec([F(1, 4), F(1, 4)]), vec([F(3, 4), F(1, 4)])) is Comparison.LEQ

    def test_equal_is_reflexive(self):
        assert compare(vec([2, 2]), vec([2, 2])) is Comparison.EQUAL

    def test_antichain(self):
        assert compare(vec([1, 0]), vec([0, 1])) is Comparison.INCOMPARABLE

    def test_infinity_above_everything(self):
        assert compare(vec([5, 5]), INF) is Comparison.LEQ
        assert compare(INF, vec([5, 5])) is Comparison.GEQ
        assert compare(INF, INF) is Comparison.EQUAL

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            compare(vec([1]), vec([1, 2]))


rationals = st.fractions(min_value=0, max_value=8, max_denominator=6)
vectors = st.lists(rationals, min_size=2, max_size=2).map(vec)


@given(vectors, vectors, vectors)
def test_partial_order_transitive(a, b, c):
    if compare(a, b) in (Comparison.LEQ, Comparison.EQUAL) and compare(
        b, c
    ) in (Comparison.LEQ, Comparison.EQUAL):
        assert compare(a, c) in (Comparison.LEQ, Comparison.EQUAL)


@given(vectors, vectors)
def test_partial_order_antisymmetric(a, b):
    if compare(a, b) is Comparison.LEQ:
        assert compare(b, a) is Comparison.GEQ


class TestMinimum:
    def test_smallest_of_chain(self):
        lo = vec([F(1, 4), F(1, 4)])
        hi = vec([F(3, 4), F(1, 4)])
        assert minimum({lo, hi}) == lo

    def test_single_infinity(self):
        assert minimum([INF]) is INF

    def test_incomparable_pair_rejected(self):
        with pytest.raises(ComparabilityError):
            minimum([vec([1, 2]), vec([2, 1])])

    def test_minimum_below_all(self):
        vs = [vec([1, 1]), vec([2, 2]), vec([3, 3]), INF]
        m = minimum(vs)
        for v in vs:
            assert compare(m, v) in (Comparison.LEQ, Comparison.EQUAL)


class TestDot:
    def test_projection_example(self):
        assert dot((1, 1), vec([6, 6])) == 12

    def test_fractional(self):
        assert dot((4, 4), vec([F(1, 4), F(1, 4)])) == 2

    def test_zero_vector(self):
        assert dot((0, 0), vec([3, 2])) == 0

    def test_mismatch(self):
        with pytest.raises(ValueError):
            dot((1,), vec([1, 2]))


@given(vectors, vectors, st.integers(-5, 5), st.integers(-5, 5))
def test_dot_bilinear(a, b, m, n):
    c = (m, n)
    lhs = dot(c, tuple(x + y for x, y in zip(a, b)))
    assert lhs == dot(c, a) + dot(c, b)


def test_rat_normalizes_and_rejects_floats():
    assert rat(Fraction(4, 2)) == 2 and isinstance(rat(Fraction(4, 2)), int)
    assert rat("3/4") == F(3, 4)
    with pytest.raises(TypeError):
        rat(0.5)


def test_vec_rejects_negative():
    with pytest.raises(ValueError):
        vec([-1, 0])


class TestParetoMinimal:
    def test_single_minimum(self):
        pts = [(18, 14), (19, 14), (20, 16), (18, 15)]
        assert pareto_minimal(pts) == [(18, 14)]

    def test_antichain_survives(self):
        assert sorted(pareto_minimal([(1, 0), (0, 1), (1, 1)])) == [(0, 1), (1, 0)]

    def test_every_point_dominated_by_some_minimal(self):
        pts = [(3, 1), (1, 3), (2, 2), (4, 4), (0, 5)]
        mins = pareto_minimal(pts)
        for p in pts:
            assert any(all(x <= y for x, y in zip(m, p)) for m in mins)
