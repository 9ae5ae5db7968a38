from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import info_structures, signal_sets
from oracles import max_over_decompositions
from phelps_audit.errors import InputError
from phelps_audit.geometry import (
    ConvexDecomposition,
    NotSeparable,
    Outside,
    SeparatingHyperplane,
    convex_decomposition,
    extreme_points,
    strict_separation,
)
from phelps_audit.model import SignalSet, induced_skill


def test_decompose_midpoint(segment_mid):
    dec = convex_decomposition(segment_mid, (F(1, 2), F(1, 2)), [0, 1])
    assert isinstance(dec, ConvexDecomposition)
    assert dec.weights(3) == (F(1, 2), F(1, 2), 0)


def test_outside(simplex3):
    assert convex_decomposition(simplex3.subset([0, 1]), (0, 0, 1)) == Outside()
    assert convex_decomposition(simplex3, (1, 0, 0), []) == Outside()


def test_target_dimension_checked(simplex3):
    with pytest.raises(InputError):
        convex_decomposition(simplex3, (1, 0))


def test_extreme_points(worked_T, segment_mid, simplex3):
    assert extreme_points(worked_T) == [0, 1, 2, 3]
    assert extreme_points(segment_mid) == [0, 1]
    assert extreme_points(simplex3) == [0, 1, 2]


def test_separation(segment_mid):
    h = strict_separation(segment_mid, 0, [0, 1, 2])
    assert isinstance(h, SeparatingHyperplane)
    assert h(segment_mid[0]) >= 1
    assert h(segment_mid[1]) <= -1 and h(segment_mid[2]) <= -1
    a = h.as_action()
    assert all(a(t) == h(t) for t in segment_mid)
    assert strict_separation(segment_mid, 2, [0, 1, 2]) == NotSeparable()


def test_separation_needs_member(segment_mid):
    with pytest.raises(InputError):
        strict_separation(segment_mid, 0, [1, 2])


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_decomposition_of_a_mean(data):
    T = data.draw(signal_sets())
    pi = data.draw(info_structures(len(T)))
    s = induced_skill(T, pi).probs
    dec = convex_decomposition(T, s)
    w = dec.weights(len(T))
    assert sum(w) == 1 and min(w) >= 0
    assert tuple(sum(x * t[r] for x, t in zip(w, T)) for r in range(T.dim)) == s
    assert len(dec.support) <= T.dim + 1


@settings(max_examples=80, deadline=None)
@given(signal_sets())
def test_extreme_points_against_enumeration(T):
    E = extreme_points(T)
    pts = [t.probs for t in T]
    for i in range(len(T)):
        others = [pts[j] for j in range(len(T)) if j != i]
        inside = bool(others) and max_over_decompositions(others, pts[i], [0] * len(others), T.dim + 1) is not None
        assert (i in E) == (not inside)
        cut = strict_separation(T, i, range(len(T)))
        assert isinstance(cut, NotSeparable) == inside
        if not inside:
            assert cut(T[i]) >= 1
            assert all(cut(T[j]) <= -1 for j in range(len(T)) if j != i)


def test_single_signal():
    T = SignalSet(((F(1, 3), F(2, 3)),))
    assert extreme_points(T) == [0]
    assert isinstance(strict_separation(T, 0, [0]), SeparatingHyperplane)
