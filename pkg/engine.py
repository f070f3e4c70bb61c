from __future__ import annotations
import logging
import time
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Any, Callable, Dict, List, Tuple

from numpy.random import Generator

from base_space import BasePoint, BaseSpace, FiniteDiscrete, random_rational
from codec import to_jsonable
from errors import PointOutsideO, RForestError, UnknownSuite
from forest import (
    distance,
    distance_trunc,
    eval_predicate,
    graft,
    is_prefix,
    max_label,
    meet,
    meet_family,
    tp_base,
)
from generators import (
    case_rng,
    choice,
    random_branch,
    random_component,
    random_element,
    random_family,
    random_interval_config,
    random_path,
    random_tree,
    random_type_pair,
)
from models import Bounds, RunReport, SuiteConfig, Violation
from path_space import (
    PathEntourage,
    check_path_axioms,
    entourage_laws_check,
    entourage_test,
    make_path,
    make_pointed_metric,
    parallel_path,
)
from schemas import INFINITY, RunReportOut, ViolationOut
from tree_geometry import (
    big_distance_decompose,
    ccl,
    delta_predicate,
    dist_to_interval,
    interval,
    interval_as_path,
    interval_pointed_metric,
    interval_union_contains,
    project_interval,
    project_interval_exhaustive,
    project_tree,
    project_tree_by_intervals,
)
from type_space import InfiniteType, PathType, realization_oracle, s1_empty_check, type_distance

logger = logging.getLogger(__name__)

# Three leaves pairwise 2 apart, joined through a centre at distance 1; based at a leaf.
TRIPOD = make_pointed_metric(
    ["a", "b", "c", "o"],
    [[Fraction(v) for v in row] for row in ([0, 2, 2, 1], [2, 0, 2, 1], [2, 2, 0, 1], [1, 1, 1, 0])],
    0,
)


# ---------- per-case bookkeeping ----------
class _Case:
    def __init__(self, space: BaseSpace, index: int):
        self.space = space
        self.index = index
        self.violations: List[Violation] = []

    def check(self, ok: bool, name: str, **payload: Any) -> bool:
        if not ok:
            self.violations.append(Violation(self.index, name, to_jsonable(self.space, payload)))
        return ok

    def point(self, x):
        return self.space.format_point(x)


SuiteFn = Callable[[BaseSpace, Generator, Bounds, _Case], None]


def _rational(rng: Generator, bounds: Bounds, hi: Fraction) -> Fraction:
    return random_rational(rng, Fraction(0), hi, bounds.max_denominator, lo_closed=False)


# ---------- metric-axioms ----------
def _metric_axioms(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    k, l, n = random_component(space, rng, bounds, 3)
    if int(rng.integers(6)) == 0:
        n = random_element(space, rng, bounds)
    s = _rational(rng, bounds, 2 * space.diameter)
    trio = (k, l, n)
    d = {(i, j): distance(trio[i], trio[j]) for i, j in product(range(3), repeat=2)}
    ds = {key: min(v, s) for key, v in d.items()}
    for i, j in d:
        a, b = trio[i], trio[j]
        c.check((d[i, j] == 0) == (a == b), "identity", a=a, b=b, d=d[i, j])
        c.check(d[i, j] == d[j, i], "symmetry", a=a, b=b)
        c.check(distance_trunc(a, b, s) == ds[i, j], "truncation", a=a, b=b, s=s)
        if d[i, j] != INFINITY:
            c.check(abs(a.length - b.length) <= d[i, j], "length-bound", a=a, b=b)
        if is_prefix(a, b):
            c.check(d[i, j] == b.length - a.length, "prefix-distance", a=a, b=b)
    for i, j, m in product(range(3), repeat=3):
        a, b, e = trio[i], trio[j], trio[m]
        c.check(d[i, m] <= d[i, j] + d[j, m], "triangle", a=a, b=b, c=e)
        c.check(ds[i, m] <= ds[i, j] + ds[j, m], "triangle-truncated", a=a, b=b, c=e, s=s)


# ---------- meet-bounds ----------
def _meet_bounds(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    family = random_family(space, rng, bounds)
    m = meet_family(family)
    diam = max(distance(a, b) for a in family for b in family)
    longest = max(k.length for k in family)
    c.check(m.length >= longest - diam, "common-initial-bound", family=family, meet=m)
    for k in family:
        c.check(distance(k, m) <= diam, "meet-diameter-bound", family=family, element=k)
    c.check(meet_family(family[::-1]) == m, "meet-associativity", family=family)

    diam_x = space.diameter
    f = space.sample_function(rng, bounds.max_denominator)
    r = _rational(rng, bounds, 2 * diam_x)
    for a, b in combinations(family, 2):
        d_diam = distance_trunc(a, b, diam_x)
        c.check(abs(eval_predicate(space, f, a) - eval_predicate(space, f, b)) <= f.lipschitz * d_diam,
                "predicate-lipschitz", a=a, b=b)
        c.check(space.der(tp_base(a), tp_base(b)) <= d_diam, "base-distance-bound", a=a, b=b)
    k, k2, l, l2 = (choice(rng, family) for _ in range(4))
    move = max(distance_trunc(k, k2, diam_x), distance_trunc(l, l2, diam_x))
    c.check(abs(distance_trunc(k, l, r) - distance_trunc(k2, l2, r)) <= (2 + r / diam_x) * move,
            "truncated-metric-modulus", k=k, k2=k2, l=l, l2=l2, r=r)


# ---------- interval-delta ----------
def _interval_delta(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    k, k2, r, a = random_interval_config(space, rng, bounds)
    iv = interval(k, k2)
    delta = delta_predicate(k, k2, r, a)
    dist = dist_to_interval(a, iv)
    payload = dict(k=k, k2=k2, r=r, a=a, delta=delta)
    c.check(delta == min(2 * dist, r), "delta-twice-distance", dist=dist, **payload)
    if dist != INFINITY:
        c.check((delta == 0) == (a in iv), "delta-zero-on-interval", **payload)
    n_expected = (sum(1 for x in k.breakpoints if x >= iv.m.length)
                  + sum(1 for x in k2.breakpoints if x >= iv.m.length) - 1)
    c.check(len(iv.elements) == n_expected, "interval-size", k=k, k2=k2)
    for (p, e), (q, g) in product(zip(iv.positions, iv.elements), repeat=2):
        c.check(distance(e, g) == abs(p - q), "arc-isometry", k=k, k2=k2, e=e, g=g)
    try:
        make_path(space, iv.positions, [e.tip for e in iv.elements])
    except RForestError as err:
        c.check(False, "interval-path-lipschitz", k=k, k2=k2, error=str(err))
    c.check(interval_as_path(iv, k2).length == iv.length, "interval-path-reversed", k=k, k2=k2)


# ---------- projection-unique ----------
def _projection_unique(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    tree = random_tree(space, rng, bounds)
    base = tree.elements[int(rng.integers(len(tree.elements)))]
    a = random_branch(space, rng, bounds, base)
    for iv in tree.intervals:
        closed = project_interval(a, iv)
        exhaustive, d = project_interval_exhaustive(a, iv)
        c.check(closed == exhaustive, "interval-projection", a=a, k=iv.k, k2=iv.k2, closed=closed,
                exhaustive=exhaustive)
        c.check(distance(a, closed) == d, "interval-projection-distance", a=a, k=iv.k, k2=iv.k2)
        # projection of k2 onto [k, a] lies in [k, k2]
        p = project_interval(iv.k2, interval(iv.k, a))
        c.check(p in iv, "projection-in-side-interval", a=a, k=iv.k, k2=iv.k2, projection=p)
    global_p, d = project_tree(a, tree)
    via_intervals, d2 = project_tree_by_intervals(a, tree)
    c.check(global_p == via_intervals and d == d2, "tree-projection", a=a, tree=tree.elements)

    fresh = max_label(tree.elements) + 1
    f = random_path(space, rng, bounds, start=base.tip)
    grafted = graft(base, f, fresh)
    c.check(project_tree(grafted, tree)[0] == base, "graft-nearest", m=base, f=f, tree=tree.elements)


# ---------- tree-containment ----------
def _tree_containment(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    tree = random_tree(space, rng, bounds)
    elems = tree.elements
    k, l = choice(rng, elems), choice(rng, elems)
    c.check(all(e in tree for e in interval(k, l).elements), "interval-in-tree", k=k, l=l, tree=elems)
    e, f, g = (choice(rng, elems) for _ in range(3))
    c.check(interval_union_contains(e, f, g), "three-point-containment", e=e, f=f, g=g)
    tup = [choice(rng, elems) for _ in range(int(rng.integers(1, 4)))]
    hull = ccl(tup)
    c.check(all(x in tree for x in hull.elements), "ccl-minimal", tuple=tup, tree=elems)
    c.check(all(x in hull for x in tup), "ccl-contains", tuple=tup)
    c.check(meet(k, l) in tree, "meet-closed", k=k, l=l, tree=elems)


# ---------- big-distance ----------
def _big_distance(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    a, b, x, y = random_component(space, rng, bounds, 4)
    rec = big_distance_decompose(a, b, x, y)
    c.check(rec.holds, "three-term-decomposition", a=a, b=b, c=x, e=y, terms=rec.terms, total=rec.total)


# ---------- parallel-paths ----------
def _parallel_paths(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    f = random_path(space, rng, bounds)
    v = space.sample_entourage(rng, bounds.max_denominator)
    e = _rational(rng, bounds, Fraction(2))
    pp = parallel_path(space, f, v, e)
    u = PathEntourage(v, e)
    ctx = dict(f=f, V=space.format_entourage(v), e=e)
    if not c.check(pp.contains(f.root), "root-in-O", **ctx):
        return
    for _ in range(3):
        x = space.sample_in_region(pp.O, rng, bounds.max_denominator)
        built = pp.build(x)
        g = built.path
        c.check(g.root == x, "starts-at-x", x=c.point(x), **ctx)
        try:
            make_path(space, g.breakpoints, g.values)
        except RForestError as err:
            c.check(False, "lipschitz", x=c.point(x), g=g, error=str(err), **ctx)
        c.check(entourage_test(space, f, g, u), "entourage-close", x=c.point(x), g=g, **ctx)
        c.check(g.length < f.length + e, "length-bound", x=c.point(x), g=g, **ctx)
        for i, step in enumerate(pp.steps):
            if step > 0:
                moved = space.der(built.chain[i], built.chain[i + 1])
                c.check(step / pp.gamma <= moved <= pp.gamma * step, "chain-bounds",
                        x=c.point(x), step=i, **ctx)
    outside = space.sample_point(rng, bounds.max_denominator)
    if not pp.contains(outside):
        try:
            pp.build(outside)
            c.check(False, "outside-O-rejected", x=c.point(outside), **ctx)
        except PointOutsideO:
            pass


# ---------- entourage-laws ----------
def _entourage_laws(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    u = PathEntourage(space.sample_entourage(rng, bounds.max_denominator), _rational(rng, bounds, Fraction(2)))
    w = PathEntourage(space.sample_entourage(rng, bounds.max_denominator), _rational(rng, bounds, Fraction(2)))
    j, _ = space.shrink(u.V, u.e)
    f = random_path(space, rng, bounds)
    # g and h both built from f, so (g, f, h) chains two half-steps through f
    pp = parallel_path(space, f, j, u.e / 2)

    def nudge():
        if int(rng.integers(4)):
            return pp.build(space.sample_in_region(pp.O, rng, bounds.max_denominator)).path
        return random_path(space, rng, bounds)

    g, h = nudge(), nudge()
    report = entourage_laws_check(space, u, w, [(f, g), (f, h), (g, h)], [(g, f, h), (f, g, h)])
    for v in report.violations:
        c.check(False, v["law"], paths=v["paths"], U=[space.format_entourage(u.V), u.e],
                W=[space.format_entourage(w.V), w.e])
    for a, b in ((f, g), (g, h), (f, h)):
        c.check(entourage_test(space, a, b, u) == entourage_test(space, b, a, u), "entourage-symmetric",
                f=a, g=b, U=[space.format_entourage(u.V), u.e])


# ---------- path-axioms ----------
@lru_cache(maxsize=None)
def _tripod_rejected() -> bool:
    return not check_path_axioms(TRIPOD, Fraction(5))


def _path_axioms(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    k, k2 = random_component(space, rng, bounds, 2)
    iv = interval(k, k2)
    r = iv.length + random_rational(rng, Fraction(0), Fraction(2), bounds.max_denominator)
    for base in (k, k2):
        c.check(check_path_axioms(interval_pointed_metric(iv, base), r), "interval-is-path", k=k, k2=k2,
                basepoint=base, r=r)
    c.check(_tripod_rejected(), "tripod-rejected")


# ---------- type-metric ----------
def _type_metric(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    model, *types = random_type_pair(space, rng, bounds)
    diam = space.diameter
    d = {(i, j): type_distance(types[i], types[j], model, space) for i in range(3) for j in range(3)}
    for i, j in d:
        ctx = dict(t1=types[i], t2=types[j], model=model.elements)
        c.check(d[i, j] == d[j, i], "symmetry", **ctx)
        c.check(0 <= d[i, j] <= diam, "clipped", **ctx)
        c.check((d[i, j] == 0) == (types[i] == types[j]), "separation", **ctx)
        mixed = isinstance(types[i], InfiniteType) != isinstance(types[j], InfiniteType)
        if mixed:
            c.check(d[i, j] == diam, "infinite-vs-path", **ctx)
        both_paths = isinstance(types[i], PathType) and isinstance(types[j], PathType)
        if both_paths and model.tree_index(types[i].m) == model.tree_index(types[j].m):
            oracle = realization_oracle(types[i], types[j], model, space)
            c.check(oracle == d[i, j], "oracle-agrees", oracle=oracle, d=d[i, j], **ctx)
    for i, j, k in product(range(3), repeat=3):
        c.check(d[i, k] <= d[i, j] + d[j, k], "triangle", t1=types[i], t2=types[j], t3=types[k])


# ---------- main-theorem ----------
def main_theorem_pair(space: BaseSpace, rng: Generator, bounds: Bounds,
                      index: int) -> Tuple[BasePoint, BasePoint]:
    """Case `index` walks every ordered pair of a finite space in turn; other spaces sample."""
    if isinstance(space, FiniteDiscrete):
        n = len(space.labels)
        return divmod(index % (n * n), n)
    return space.sample_point(rng, bounds.max_denominator), space.sample_point(rng, bounds.max_denominator)


def _main_theorem(space: BaseSpace, rng: Generator, bounds: Bounds, c: _Case) -> None:
    x, y = main_theorem_pair(space, rng, bounds, c.index)
    k, l = random_component(space, rng, bounds, 2)
    report = s1_empty_check(space, [(x, y)], [(k, l), (k, random_element(space, rng, bounds))])
    for v in report.violations:
        payload = {key: val for key, val in v.items() if key != "check"}
        if "x" in payload:
            payload["x"], payload["y"] = c.point(payload["x"]), c.point(payload["y"])
        c.check(False, v["check"], **payload)


SUITES: Dict[str, SuiteFn] = {
    "metric-axioms": _metric_axioms,
    "meet-bounds": _meet_bounds,
    "interval-delta": _interval_delta,
    "projection-unique": _projection_unique,
    "tree-containment": _tree_containment,
    "big-distance": _big_distance,
    "parallel-paths": _parallel_paths,
    "entourage-laws": _entourage_laws,
    "path-axioms": _path_axioms,
    "type-metric": _type_metric,
    "main-theorem": _main_theorem,
}


# ---------- runner ----------
def run_case(cfg: SuiteConfig, index: int) -> List[Violation]:
    """Replay a single case; its generator depends only on (seed, index)."""
    fn = SUITES.get(cfg.suite)
    if fn is None:
        raise UnknownSuite(cfg.suite, list(SUITES))
    case = _Case(cfg.space, index)
    try:
        fn(cfg.space, case_rng(cfg.seed, index), cfg.bounds, case)
    except (RForestError, RuntimeError) as err:
        case.check(False, "raised", error=f"{type(err).__name__}: {err}")
    return case.violations


def run_suite(cfg: SuiteConfig) -> RunReport:
    if cfg.suite not in SUITES:
        raise UnknownSuite(cfg.suite, list(SUITES))
    if cfg.cases < 1:
        raise RForestError(f"cases must be positive, got {cfg.cases}")
    logger.info("suite %s: %d cases, seed %d, %s space", cfg.suite, cfg.cases, cfg.seed, cfg.space.kind)
    started = time.perf_counter()
    report = RunReport(cfg.suite, cfg.seed, cfg.cases)
    for i in range(cfg.cases):
        for v in run_case(cfg, i):
            logger.warning("suite %s case %d: %s violated", cfg.suite, i, v.check)
            report.violations.append(v)
    report.wall_time = time.perf_counter() - started
    logger.info("suite %s finished in %.2fs with %d violation(s)", cfg.suite, report.wall_time,
                len(report.violations))
    return report


def report_to_json(report: RunReport) -> RunReportOut:
    return RunReportOut(
        suite=report.suite,
        seed=report.seed,
        cases=report.cases,
        violations=[ViolationOut(case=v.case, check=v.check, counterexample=v.counterexample)
                    for v in report.violations],
        wall_time=round(report.wall_time, 6),
    )
