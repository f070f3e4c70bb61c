from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import A, B, C, elem
from errors import LabelOnSupremum, LipschitzViolation, MissingZeroBreakpoint, MixedComponents, RootMismatch
from forest import (
    distance,
    distance_trunc,
    eval_predicate,
    graft,
    is_prefix,
    make_element,
    max_label,
    meet,
    meet_family,
    restrict,
    same_component,
    tp_base,
)
from generators import case_rng, random_component
from models import Bounds
from path_space import Path, point_path
from schemas import INFINITY


# ---------- construction ----------
def test_make_element_accepts_lipschitz_breakpoints(x3, k):
    assert k["K1"].length == 1
    assert k["K1"].labels == (0,)
    assert k["pt_a"].length == 0
    assert k["K1"].notation(x3) == "<0:a/0, 1:b>"


def test_make_element_rejects_bad_input(x3):
    with pytest.raises(LipschitzViolation) as exc:
        elem(x3, (0, "a", 0), (1, "c"))
    assert exc.value.index == 0
    with pytest.raises(LabelOnSupremum):
        make_element(x3, [F(0), F(1)], [A, B], [0, 3])
    with pytest.raises(MissingZeroBreakpoint):
        make_element(x3, [F(1)], [A], [None])


# ---------- restriction, meets ----------
def test_restrict(k):
    assert restrict(k["K2"], F(1)) == k["K1"]
    assert restrict(k["K2"], F(3, 2)) == k["K1"]
    assert restrict(k["K2"], F(0)) == k["pt_a"]
    assert restrict(k["K2"], F(7)) == k["K2"]


def test_meet_examples(k):
    assert meet(k["K1"], k["K2"]) == k["K1"]
    assert meet(k["K1"], k["K3"]) == k["pt_a"]
    assert meet(k["K1"], k["L_b"]) is None


def test_meet_family_examples(k):
    assert meet_family([k["K1"], k["K2"], k["K5"]]) == k["K1"]
    assert meet_family([k["K1"], k["K3"], k["K5"]]) == k["pt_a"]
    assert meet_family([k["K2"]]) == k["K2"]
    with pytest.raises(MixedComponents):
        meet_family([k["K1"], k["L_b"]])


def test_same_component_and_prefix(k):
    assert same_component(k["K1"], k["K2"])
    assert not same_component(k["K1"], k["L_b"])
    assert is_prefix(k["K1"], k["K2"])
    assert is_prefix(k["pt_a"], k["K3"])
    assert not is_prefix(k["K3"], k["K2"])


# ---------- metric ----------
def test_distance_examples(k):
    assert distance(k["K1"], k["K2"]) == 1
    assert distance(k["K5"], k["K3"]) == 3
    assert distance_trunc(k["K5"], k["K3"], F(2)) == 2
    assert distance(k["K2"], k["K2"]) == 0


def test_distance_across_components(k):
    assert distance(k["K1"], k["L_b"]) == INFINITY
    assert distance_trunc(k["K1"], k["L_b"], F(5, 2)) == F(5, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_four_point_condition(spaces, seed):
    rng = case_rng(seed, 3)
    for space in spaces.values():
        a, b, c, d = random_component(space, rng, Bounds(max_breakpoints=4), 4)
        sums = sorted([
            distance(a, b) + distance(c, d),
            distance(a, c) + distance(b, d),
            distance(a, d) + distance(b, c),
        ])
        # the two largest pair sums agree in an R-tree
        assert sums[1] == sums[2]
        assert distance(a, c) <= distance(a, b) + distance(b, c)


# ---------- predicates, tips, grafting ----------
def test_predicates_and_tips(x3, k):
    f = x3.distance_function(A)
    assert eval_predicate(x3, f, k["K2"]) == 2
    assert eval_predicate(x3, f, k["pt_a"]) == 0
    assert eval_predicate(x3, f, k["K1"]) == 1
    assert tp_base(k["K2"]) == C
    assert tp_base(k["pt_a"]) == A
    assert tp_base(k["K6"]) == B


def test_graft_examples(x3, k):
    assert graft(k["pt_a"], Path((F(0), F(1)), (A, B)), 9) == elem(x3, (0, "a", 9), (1, "b"))
    assert graft(k["K1"], point_path(B), 9) == k["K1"]
    assert graft(k["K1"], Path((F(0), F(1)), (B, C)), 9) == elem(x3, (0, "a", 0), (1, "b", 9), (2, "c"))
    with pytest.raises(RootMismatch):
        graft(k["K1"], point_path(A), 9)


def test_max_label(k):
    assert max_label([k["K1"], k["K3"], k["K6"]]) == 2
    assert max_label([k["pt_a"]]) == -1
