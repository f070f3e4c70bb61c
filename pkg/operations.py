"""
JSON-level operations shared by the CLI (main.py) and the HTTP API (api.py).
Each takes a validated request envelope from schemas.py and returns an output model.
"""
from __future__ import annotations
import logging
from typing import List

from base_space import validate_space
from codec import (
    desk_model_from_json,
    element_from_json,
    element_to_json,
    function_from_json,
    interval_to_json,
    path_from_json,
    path_to_json,
    pointed_metric_from_json,
    tree_from_json,
    tree_to_json,
    type_from_json,
)
from engine import report_to_json, run_suite
from errors import DifferentComponents, PointOutsideO, RForestError
from forest import distance, distance_trunc, eval_predicate, meet_family, restrict, same_component, tp_base
from models import Bounds, SuiteConfig
from path_space import PathEntourage, check_path_axioms, entourage_test, parallel_path
from schemas import (
    AxiomsIn,
    AxiomsOut,
    BuildOut,
    CclIn,
    DeltaIn,
    DeltaOut,
    DiameterOut,
    DistanceIn,
    DistanceOut,
    ElementOut,
    EntourageTestOut,
    IntervalIn,
    IntervalOut,
    IsomorphicIn,
    IsomorphicOut,
    MeetIn,
    MeetOut,
    ParallelIn,
    ParallelOut,
    PathTestIn,
    PredicateIn,
    PredicateOut,
    ProjectIn,
    ProjectionOut,
    RestrictIn,
    RunReportOut,
    SpaceCheckOut,
    SuiteRunIn,
    TipIn,
    TipOut,
    TreeOut,
    TreeProjectIn,
    TypeDistanceIn,
    TypeDistanceOut,
    format_rational,
    parse_rational,
)
from tree_geometry import (
    ccl,
    delta_predicate,
    dist_to_interval,
    interval,
    interval_as_path,
    intervals_isomorphic,
    project_interval,
    project_tree,
)
from type_space import realization_oracle, type_distance

logger = logging.getLogger(__name__)


# ---------- space ----------
def space_check(raw) -> SpaceCheckOut:
    space = validate_space(raw)
    return SpaceCheckOut(
        valid=True, kind=space.kind, diameter=format_rational(space.diameter), space=space.describe(),
    )


def space_diameter(raw) -> DiameterOut:
    return DiameterOut(diameter=format_rational(validate_space(raw).diameter))


# ---------- elements ----------
def elem_distance(req: DistanceIn) -> DistanceOut:
    space = validate_space(req.space)
    a, b = element_from_json(space, req.a), element_from_json(space, req.b)
    out = DistanceOut(d=format_rational(distance(a, b)))
    if req.s is not None:
        s = parse_rational(req.s)
        if s <= 0:
            raise RForestError("truncation s must be positive")
        out.d_trunc = format_rational(distance_trunc(a, b, s))
    return out


def elem_meet(req: MeetIn) -> MeetOut:
    space = validate_space(req.space)
    ks = [element_from_json(space, k) for k in req.elements]
    if any(not same_component(ks[0], k) for k in ks[1:]):
        return MeetOut(same_component=False)
    return MeetOut(same_component=True, meet=element_to_json(space, meet_family(ks)))


def elem_restrict(req: RestrictIn) -> ElementOut:
    space = validate_space(req.space)
    r = parse_rational(req.r)
    if r < 0:
        raise RForestError("restriction radius must be nonnegative")
    return ElementOut(**element_to_json(space, restrict(element_from_json(space, req.element), r)))


def elem_tip(req: TipIn) -> TipOut:
    space = validate_space(req.space)
    return TipOut(x=space.format_point(tp_base(element_from_json(space, req.element))))


def elem_predicate(req: PredicateIn) -> PredicateOut:
    space = validate_space(req.space)
    f = function_from_json(space, req.function)
    return PredicateOut(value=format_rational(eval_predicate(space, f, element_from_json(space, req.element))))


# ---------- intervals and trees ----------
def interval_enum(req: IntervalIn) -> IntervalOut:
    space = validate_space(req.space)
    k = element_from_json(space, req.a)
    iv = interval(k, element_from_json(space, req.b))
    return IntervalOut(**interval_to_json(space, iv, interval_as_path(iv, k)))


def interval_delta(req: DeltaIn) -> DeltaOut:
    space = validate_space(req.space)
    k, k2 = element_from_json(space, req.a), element_from_json(space, req.b)
    x = element_from_json(space, req.x)
    delta = delta_predicate(k, k2, parse_rational(req.r), x)
    return DeltaOut(delta=format_rational(delta), distance=format_rational(dist_to_interval(x, interval(k, k2))))


def interval_project(req: ProjectIn) -> ProjectionOut:
    space = validate_space(req.space)
    iv = interval(element_from_json(space, req.a), element_from_json(space, req.b))
    x = element_from_json(space, req.x)
    p = project_interval(x, iv)
    if p is None:
        raise DifferentComponents()
    return ProjectionOut(projection=element_to_json(space, p), distance=format_rational(distance(x, p)))


def tree_ccl(req: CclIn) -> TreeOut:
    space = validate_space(req.space)
    return TreeOut(**tree_to_json(space, ccl([element_from_json(space, k) for k in req.elements])))


def tree_project(req: TreeProjectIn) -> ProjectionOut:
    space = validate_space(req.space)
    p, d = project_tree(element_from_json(space, req.x), tree_from_json(space, req.tree))
    return ProjectionOut(projection=element_to_json(space, p), distance=format_rational(d))


def tree_isomorphic(req: IsomorphicIn) -> IsomorphicOut:
    space = validate_space(req.space)
    a, c = element_from_json(space, req.a), element_from_json(space, req.c)
    iv, jv = interval(a, element_from_json(space, req.b)), interval(c, element_from_json(space, req.d))
    return IsomorphicOut(isomorphic=intervals_isomorphic(iv, a, jv, c))


# ---------- paths ----------
def path_test(req: PathTestIn) -> EntourageTestOut:
    space = validate_space(req.space)
    u = PathEntourage(space.parse_entourage(req.V), parse_rational(req.e))
    f, g = path_from_json(space, req.f), path_from_json(space, req.g)
    return EntourageTestOut(member=entourage_test(space, f, g, u))


def path_parallel(req: ParallelIn) -> ParallelOut:
    space = validate_space(req.space)
    f = path_from_json(space, req.f)
    v, e = space.parse_entourage(req.V), parse_rational(req.e)
    pp = parallel_path(space, f, v, e)
    builds: List[BuildOut] = []
    for raw in req.points:
        x = space.parse_point(raw)
        try:
            g = pp.build(x).path
        except PointOutsideO as err:
            builds.append(BuildOut(x=space.format_point(x), error=str(err)))
            continue
        builds.append(BuildOut(
            x=space.format_point(x),
            path=path_to_json(space, g),
            entourage_test=entourage_test(space, f, g, PathEntourage(v, e)),
        ))
    return ParallelOut(region=space.format_region(pp.O), gamma=format_rational(pp.gamma), builds=builds)


def path_axioms(req: AxiomsIn) -> AxiomsOut:
    r = parse_rational(req.r)
    if r <= 0:
        raise RForestError("r must be positive")
    return AxiomsOut(holds=check_path_axioms(pointed_metric_from_json(req.metric), r))


# ---------- types ----------
def _types(req: TypeDistanceIn):
    space = validate_space(req.space)
    model = desk_model_from_json(space, req.model)
    return space, model, type_from_json(space, req.t1), type_from_json(space, req.t2)


def types_distance(req: TypeDistanceIn) -> TypeDistanceOut:
    space, model, t1, t2 = _types(req)
    return TypeDistanceOut(d=format_rational(type_distance(t1, t2, model, space)))


def types_oracle(req: TypeDistanceIn) -> TypeDistanceOut:
    space, model, t1, t2 = _types(req)
    return TypeDistanceOut(d=format_rational(realization_oracle(t1, t2, model, space)))


# ---------- property suites ----------
def prop_run(req: SuiteRunIn) -> RunReportOut:
    cfg = SuiteConfig(
        suite=req.suite,
        space=validate_space(req.space),
        seed=req.seed,
        cases=req.cases,
        bounds=Bounds(req.max_breakpoints, req.max_family, req.max_intervals, req.max_denominator),
    )
    return report_to_json(run_suite(cfg))
