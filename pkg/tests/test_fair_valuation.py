from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import action_sets, info_structures, signal_sets
from oracles import brute_force_lp
from phelps_audit.discrimination import is_identified
from phelps_audit.errors import InputError
from phelps_audit.exact_lp import Status
from phelps_audit.fair_valuation import dominating_lp, fair_valuation
from phelps_audit.model import Action, ActionSet, SignalSet, induced_skill, value_function


def test_simplex_vertices(simplex3, worked_A):
    fv = fair_valuation(simplex3, worked_A)
    assert fv.alpha == Action((1, F(1, 2), 3))
    assert fv.holds_on(simplex3)


def test_worked_example_has_none(worked_T, worked_A):
    assert fair_valuation(worked_T, worked_A) is None


def test_single_action_is_its_own_valuation(worked_T):
    A = ActionSet(((2, F(-1, 3), 5),))
    assert fair_valuation(worked_T, A).alpha == A[0]


def test_dimension_mismatch(simplex3):
    with pytest.raises(InputError):
        fair_valuation(simplex3, ActionSet(((1, 0),)))
    with pytest.raises(InputError):
        dominating_lp(simplex3, ActionSet(((1, 0, 0),)), (1, 0))


def _oracle(T, A, s):
    # min y.s  with y free: split y = u - w, u, w >= 0, and maximise -y.s
    c = [-x for x in s] + list(s)
    A_ub = [[-x for x in t] + list(t) for t in T]
    b_ub = [-value_function(A, t) for t in T]
    status, value = brute_force_lp(c, True, [], [], A_ub, b_ub)
    return status, None if value is None else -value


@pytest.mark.parametrize("s, expected", [((0, 0, 1), 3), ((F(1, 3),) * 3, F(3, 2)), ((1, 0, 0), 1)])
def test_dominating_values(worked_T, worked_A, s, expected):
    res = dominating_lp(worked_T, worked_A, s)
    assert res.status is Status.OPTIMAL and res.value == expected
    assert res.y(s) == expected
    assert all(res.y(t) >= value_function(worked_A, t) for t in worked_T)
    assert _oracle(worked_T, worked_A, s) == ("optimal", expected)


def test_outside_hull_is_unbounded(worked_T, worked_A):
    assert dominating_lp(worked_T, worked_A, (0, 1, 0)).status is Status.UNBOUNDED
    assert _oracle(worked_T, worked_A, (0, 1, 0))[0] == "unbounded"


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_identified_sets_always_have_valuations(data):
    T = data.draw(signal_sets(max_size=5))
    A = data.draw(action_sets(T.dim))
    fv = fair_valuation(T, A)
    if is_identified(T):
        assert fv is not None
    if fv is not None:
        assert fv.holds_on(T)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_dominating_lp_matches_enumeration(data):
    T = data.draw(signal_sets(max_dim=3, max_size=4))
    A = data.draw(action_sets(T.dim, max_size=3))
    s = induced_skill(T, data.draw(info_structures(len(T)))).probs
    res = dominating_lp(T, A, s)
    assert _oracle(T, A, s) == ("optimal", res.value)


def test_singleton_set_dominating():
    T = SignalSet(((F(1, 4), F(3, 4)),))
    A = ActionSet(((4, 0), (0, 4)))
    assert dominating_lp(T, A, (F(1, 4), F(3, 4))).value == 3
