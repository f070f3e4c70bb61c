from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from base_space import (
    INF,
    EventuallyConstant,
    IntervalRegion,
    PiecewiseLinear,
    PointValues,
    Span,
    TailRegion,
    diameter,
    least_denominator_between,
    validate_space,
)
from conftest import A, B, C
from errors import (
    EmptyChoice,
    FunctionNotLipschitz,
    MetricAxiomViolation,
    NonRationalValue,
    SeparationImpossible,
    SinglePointSpace,
    UnknownPoint,
)
from generators import case_rng


def _open(lo, hi):
    return IntervalRegion((Span(F(lo), F(hi)),))


# ---------- validation ----------
def test_x3_is_valid(x3):
    assert x3.kind == "finite_discrete"
    assert diameter(x3) == 2


def test_triangle_violation_reports_witness():
    bad = {"kind": "finite_discrete", "points": ["a", "b", "c"],
           "metric": [["0", "3", "1"], ["3", "0", "1"], ["1", "1", "0"]]}
    with pytest.raises(MetricAxiomViolation) as exc:
        validate_space(bad)
    assert exc.value.witness == ("a", "b", "c")


def test_asymmetric_metric_rejected():
    bad = {"kind": "finite_discrete", "points": ["a", "b"], "metric": [["0", "1"], ["2", "0"]]}
    with pytest.raises(MetricAxiomViolation):
        validate_space(bad)


def test_single_point_spaces_rejected():
    with pytest.raises(SinglePointSpace):
        validate_space({"kind": "finite_discrete", "points": ["a"], "metric": [["0"]]})
    with pytest.raises(SinglePointSpace):
        validate_space({"kind": "interval", "diameter": "0"})


def test_non_rational_entries_rejected():
    with pytest.raises(NonRationalValue):
        validate_space({"kind": "interval", "diameter": "1.5"})
    with pytest.raises(NonRationalValue):
        validate_space({"kind": "interval", "diameter": "1/0"})


def test_diameters(interval10, tail):
    assert diameter(interval10) == 10
    assert diameter(tail) == 1


def test_tail_points_parse_within_bound():
    tail = validate_space({"kind": "tail_compactification", "bound": 10})
    assert tail.parse_point("INF") is INF
    assert tail.parse_point(7) == 7
    assert tail.parse_point("7") == 7
    with pytest.raises(UnknownPoint):
        tail.parse_point(11)


def test_inf_is_a_singleton_above_every_natural():
    assert INF > 10 ** 9
    assert max([3, INF, 5]) is INF
    assert INF == INF and INF != 3


# ---------- fattening and region algebra ----------
def test_fatten_finite(x3):
    assert x3.fatten(frozenset({A}), F(3, 2)) == frozenset({A, B})


def test_fatten_interval(interval10):
    assert interval10.fatten(_open(3, 4), F(1)) == _open(2, 5)


def test_fatten_by_zero_is_empty(x3, interval10, tail):
    assert x3.fatten(frozenset({A, B}), F(0)) == frozenset()
    assert interval10.is_empty(interval10.fatten(_open(3, 4), F(0)))
    assert tail.is_empty(tail.fatten(tail.whole(), F(0)))


def test_fatten_clips_at_the_ends(interval10):
    r = interval10.fatten(_open(1, 2), F(3))
    assert r == IntervalRegion((Span(F(0), F(5), True, False),))
    assert interval10.member(F(0), r)


def test_fatten_merges_overlaps(interval10):
    spans = IntervalRegion((Span(F(1), F(2)), Span(F(3), F(4))))
    assert interval10.fatten(spans, F(1)) == _open(0, 5)
    # open spans that only touch stay apart
    assert len(interval10.fatten(spans, F(1, 2)).spans) == 2


def test_region_algebra_examples(x3, interval10, tail):
    assert x3.intersect(frozenset({A, B}), frozenset({B, C})) == frozenset({B})
    assert interval10.closure(_open(2, 5)) == IntervalRegion((Span(F(2), F(5), True, True),))
    excluded = TailRegion(frozenset({0, 1}), cofinite=True)
    assert tail.is_empty(tail.intersect(excluded, TailRegion(frozenset({0}))))
    assert tail.member(INF, excluded)
    assert not tail.member(1, excluded)


def test_tail_fatten_by_at_most_one_is_identity(tail):
    s = TailRegion(frozenset({4}))
    assert tail.fatten(s, F(1)) == s
    assert tail.fatten(s, F(3, 2)) == tail.whole()


# ---------- uniformity ----------
def test_entourage_membership(x3, tail):
    assert x3.entourage_member(F(3, 2), A, B)
    assert not x3.entourage_member(F(1), A, B)
    assert tail.entourage_member(5, 7, INF)
    assert not tail.entourage_member(5, 4, INF)
    assert tail.entourage_member(5, 4, 4)


def test_shrink_recipes(x3, interval10, tail):
    assert interval10.shrink(F(1), F(1)) == (F(1, 2), F(1, 8))
    assert x3.shrink(F(1, 2), F(1, 4)) == (F(1, 4), F(1, 16))
    assert tail.shrink(3, F(1, 2)) == (3, F(1, 4))


def test_entourage_region_is_the_ball(interval10, tail):
    assert interval10.entourage_region(F(1), F(3)) == _open(2, 4)
    assert tail.entourage_region(3, 1) == TailRegion(frozenset({1}))
    assert tail.entourage_region(3, INF) == TailRegion(frozenset({0, 1, 2}), cofinite=True)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_shrink_contract(spaces, seed):
    rng = case_rng(seed, 0)
    for space in spaces.values():
        i = space.sample_entourage(rng, 16)
        e = F(int(rng.integers(1, 17)), 8)
        j, delta = space.shrink(i, e)
        assert 0 < delta < e
        x = space.sample_point(rng, 16)
        grown = space.fatten_closed(space.closure(space.entourage_region(j, x)), delta)
        y = space.sample_in_region(grown, rng, 16)
        assert space.entourage_member(i, x, y)


# ---------- separation and choice ----------
def test_separate_examples(x3, interval10, tail):
    assert x3.separate(A, C, F(3, 2)) == (frozenset({A}), frozenset({C}))
    b, c = interval10.separate(F(3), F(6), F(1))
    assert b == _open(F(7, 3), F(11, 3))
    assert c == _open(F(16, 3), F(20, 3))
    b, c = tail.separate(INF, 4, F(1, 2))
    assert b == TailRegion(frozenset({4}), cofinite=True)
    assert c == TailRegion(frozenset({4}))


def test_separate_needs_a_gap(x3, interval10):
    with pytest.raises(SeparationImpossible):
        x3.separate(A, B, F(1))
    with pytest.raises(SeparationImpossible):
        interval10.separate(F(3), F(4), F(2))


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_separated_closures_stay_apart(spaces, seed):
    rng = case_rng(seed, 1)
    for space in spaces.values():
        x, y = space.sample_point(rng, 16), space.sample_point(rng, 16)
        if x == y:
            continue
        s = space.der(x, y) * F(int(rng.integers(0, 8)), 8)
        b, c = space.separate(x, y, s)
        assert space.member(x, b) and space.member(y, c)
        near_b = space.fatten_closed(space.closure(b), s)
        assert space.is_empty(space.intersect(near_b, space.closure(c)))


def test_pick_within_examples(x3, interval10):
    assert x3.pick_within(frozenset({B, C}), A, F(3, 2)) == B
    assert interval10.pick_within(_open(2, 5), F(1), F(2)) == F(5, 2)
    assert interval10.pick_within(_open(2, 5), F(3), F(1, 100)) == F(3)


def test_pick_within_empty(x3, tail):
    with pytest.raises(EmptyChoice):
        x3.pick_within(frozenset({C}), A, F(1))
    with pytest.raises(EmptyChoice):
        tail.pick_within(TailRegion(frozenset({3})), 4, F(1))
    assert tail.pick_within(TailRegion(frozenset({0, 1}), cofinite=True), 7, F(2)) == 7
    assert tail.pick_within(TailRegion(frozenset({0, 1}), cofinite=True), 0, F(2)) == 2


def test_least_denominator_between():
    assert least_denominator_between(F(2), F(3), False, False) == F(5, 2)
    assert least_denominator_between(F(2), F(3), True, False) == F(2)
    assert least_denominator_between(F(1, 3), F(1, 2), False, False) == F(2, 5)


# ---------- functions ----------
def test_eval_function_examples(x3, interval10, tail):
    assert x3.eval_function(x3.distance_function(A), C) == 2
    f = interval10.validate_function(PiecewiseLinear(((F(0), F(0)), (F(10), F(5))), F(1, 2)))
    assert interval10.eval_function(f, F(4)) == 2
    g = tail.validate_function(EventuallyConstant((F(0), F(1)), F(3), F(3)))
    assert tail.eval_function(g, INF) == 3
    assert tail.eval_function(g, 1) == 1


def test_function_lipschitz_checks(x3, interval10, tail):
    with pytest.raises(FunctionNotLipschitz):
        x3.validate_function(PointValues((F(0), F(3), F(0)), F(1)))
    with pytest.raises(FunctionNotLipschitz):
        interval10.validate_function(PiecewiseLinear(((F(0), F(0)), (F(10), F(5))), F(1, 4)))
    with pytest.raises(FunctionNotLipschitz):
        tail.validate_function(EventuallyConstant((F(0),), F(2), F(1)))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_sampled_functions_validate(spaces, seed):
    rng = case_rng(seed, 2)
    for space in spaces.values():
        f = space.validate_function(space.sample_function(rng, 16))
        x, y = space.sample_point(rng, 16), space.sample_point(rng, 16)
        assert abs(space.eval_function(f, x) - space.eval_function(f, y)) <= f.lipschitz * space.der(x, y)
