from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from base_space import IntervalRegion, Span
from conftest import A, B, C
from errors import LipschitzViolation, PointOutsideO, RForestError
from generators import case_rng, random_path
from models import Bounds
from path_space import (
    Path,
    PathEntourage,
    ParallelPaths,
    check_path_axioms,
    entourage_laws_check,
    entourage_test,
    make_path,
    make_pointed_metric,
    parallel_path,
    path_meet,
    path_of,
    point_path,
)

LINE = make_pointed_metric(["0", "1", "2"], [[F(0), F(1), F(2)], [F(1), F(0), F(1)], [F(2), F(1), F(0)]])
TRIPOD = make_pointed_metric(
    ["a", "b", "c", "o"],
    [[F(v) for v in row] for row in ([0, 2, 2, 1], [2, 0, 2, 1], [2, 2, 0, 1], [1, 1, 1, 0])],
)


def _path(*pairs):
    return Path(tuple(F(r) for r, _ in pairs), tuple(F(x) for _, x in pairs))


def test_strip_drops_labels(k):
    assert path_of(k["K2"]) == Path((F(0), F(1), F(2)), (A, B, C))
    assert path_of(k["pt_a"]) == point_path(A)
    assert path_of(k["K3"]) == Path((F(0), F(1)), (A, B))


def test_make_path_checks_lipschitz(x3):
    with pytest.raises(LipschitzViolation):
        make_path(x3, [F(0), F(1)], [A, C])
    assert make_path(x3, [F(0), F(2)], [A, C]).length == 2


# ---------- U_{V,e} ----------
def test_entourage_test_examples(interval10):
    f = _path((0, 3), (2, 5))
    g = _path((0, F(16, 5)), (2, F(26, 5)))
    assert entourage_test(interval10, f, f, PathEntourage(F(1, 100), F(1, 100)))
    assert entourage_test(interval10, f, g, PathEntourage(F(1, 2), F(1, 4)))
    assert not entourage_test(interval10, f, _path((0, 3), (4, 5)), PathEntourage(F(1, 2), F(1)))


def test_path_entourage_needs_positive_e():
    with pytest.raises(RForestError):
        PathEntourage(F(1), F(0))


def test_entourage_laws_on_diagonal(interval10):
    f = _path((0, 3), (2, 5))
    report = entourage_laws_check(interval10, PathEntourage(F(1), F(1)), PathEntourage(F(1, 2), F(2)),
                                  [(f, f)], [(f, f, f)])
    assert report.holds
    assert (report.pairs, report.triples) == (1, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_entourage_laws_on_random_paths(spaces, seed):
    rng = case_rng(seed, 4)
    bounds = Bounds(max_breakpoints=3)
    for space in spaces.values():
        fs = [random_path(space, rng, bounds) for _ in range(3)]
        u = PathEntourage(space.sample_entourage(rng, 8), F(int(rng.integers(1, 9)), 4))
        w = PathEntourage(space.sample_entourage(rng, 8), F(int(rng.integers(1, 9)), 4))
        assert entourage_laws_check(space, u, w, [(fs[0], fs[1])], [tuple(fs)]).holds


# ---------- path metric axioms ----------
def test_path_axioms_examples():
    assert check_path_axioms(LINE, F(5))
    assert not check_path_axioms(TRIPOD, F(5))
    assert check_path_axioms(make_pointed_metric(["p"], [[F(0)]]), F(1))


def test_path_axioms_respect_r():
    assert not check_path_axioms(LINE, F(1))


def test_path_axioms_need_an_end_as_basepoint():
    # a line is tree-like from every point, but only an end sees it as a path
    assert not check_path_axioms(make_pointed_metric(LINE.labels, LINE.metric, 1), F(5))
    assert check_path_axioms(make_pointed_metric(LINE.labels, LINE.metric, 2), F(5))


def test_path_axioms_reject_a_shortcut():
    # four points on a line, then d(x, z) cut below the arc length
    pts = [F(0), F(1), F(2), F(3)]
    rows = [[abs(x - y) for y in pts] for x in pts]
    rows[1][3] = rows[3][1] = F(3, 2)
    assert not check_path_axioms(make_pointed_metric(list("wxyz"), rows), F(5))


# ---------- meets ----------
def test_path_meet_examples():
    ab = Path((F(0), F(1)), (A, B))
    assert path_meet(ab, Path((F(0), F(1), F(2)), (A, B, C))) == ab
    assert path_meet(ab, Path((F(0), F(2)), (A, C))) == point_path(A)
    assert path_meet(ab, ab) == ab
    assert path_meet(ab, point_path(B)) is None


# ---------- parallel paths ----------
def test_parallel_point_path(interval10):
    pp = parallel_path(interval10, point_path(F(5)), F(1), F(1))
    assert pp.O == IntervalRegion((Span(F(9, 2), F(11, 2)),))
    assert pp.gamma == F(17, 16)
    assert pp.build(F(21, 4)).path == point_path(F(21, 4))
    with pytest.raises(PointOutsideO):
        pp.build(F(6))


def test_parallel_two_step_path(interval10):
    f = _path((0, 3), (2, 5))
    pp = ParallelPaths(interval10, f, F(1), F(1))
    assert (pp.j, pp.delta) == (F(1, 2), F(1, 8))
    assert pp.gamma == F(49, 48)
    assert pp.O == IntervalRegion((Span(F(439, 147), F(443, 147)),))
    built = pp.build(F(3))
    assert built.path == Path((F(0), F(49, 24)), (F(3), F(5)))
    assert entourage_test(interval10, f, built.path, PathEntourage(F(1), F(1)))
    assert not pp.contains(F(13, 4))
    with pytest.raises(PointOutsideO):
        pp.build(F(13, 4))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_parallel_paths_contract(spaces, seed):
    rng = case_rng(seed, 5)
    bounds = Bounds(max_breakpoints=4, max_denominator=8)
    for space in spaces.values():
        f = random_path(space, rng, bounds)
        v = space.sample_entourage(rng, 8)
        e = F(int(rng.integers(1, 9)), 4)
        pp = parallel_path(space, f, v, e)
        assert pp.contains(f.root)
        x = space.sample_in_region(pp.O, rng, 8)
        g = pp.build(x).path
        assert g.root == x
        make_path(space, g.breakpoints, g.values)
        assert entourage_test(space, f, g, PathEntourage(v, e))
