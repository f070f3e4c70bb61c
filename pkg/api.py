from __future__ import annotations
import logging
from typing import Callable, TypeVar

from fastapi import FastAPI, HTTPException

import operations as ops
from errors import RForestError
from schemas import (
    AxiomsIn,
    AxiomsOut,
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
    SpaceEnvelope,
    SuiteRunIn,
    TipIn,
    TipOut,
    TreeOut,
    TreeProjectIn,
    TypeDistanceIn,
    TypeDistanceOut,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

# ---------- App ----------
app = FastAPI(title="R-Forest API", version="1.0.0")


def _run(fn: Callable[..., T], payload) -> T:
    try:
        return fn(payload)
    except RForestError as e:
        logger.info("rejected %s: %s", fn.__name__, e)
        raise HTTPException(status_code=400, detail=str(e))
    except RuntimeError as e:
        # broken invariant, not bad input
        logger.error("%s failed: %s", fn.__name__, e)
        raise HTTPException(status_code=500, detail=str(e))


@app.get("/health")
def health():
    return {"status": "ok"}


# ---------- spaces ----------
@app.post("/v1/space/check", response_model=SpaceCheckOut)
def space_check(payload: SpaceEnvelope):
    return _run(ops.space_check, payload.space)


@app.post("/v1/space/diameter", response_model=DiameterOut)
def space_diameter(payload: SpaceEnvelope):
    return _run(ops.space_diameter, payload.space)


# ---------- elements ----------
@app.post("/v1/elements/distance", response_model=DistanceOut, response_model_exclude_none=True)
def elem_distance(payload: DistanceIn):
    return _run(ops.elem_distance, payload)


@app.post("/v1/elements/meet", response_model=MeetOut, response_model_exclude_none=True)
def elem_meet(payload: MeetIn):
    return _run(ops.elem_meet, payload)


@app.post("/v1/elements/restrict", response_model=ElementOut, response_model_exclude_none=True)
def elem_restrict(payload: RestrictIn):
    return _run(ops.elem_restrict, payload)


@app.post("/v1/elements/tip", response_model=TipOut)
def elem_tip(payload: TipIn):
    return _run(ops.elem_tip, payload)


@app.post("/v1/elements/predicate", response_model=PredicateOut)
def elem_predicate(payload: PredicateIn):
    return _run(ops.elem_predicate, payload)


# ---------- intervals / trees ----------
@app.post("/v1/intervals/enumerate", response_model=IntervalOut, response_model_exclude_none=True)
def interval_enum(payload: IntervalIn):
    return _run(ops.interval_enum, payload)


@app.post("/v1/intervals/delta", response_model=DeltaOut)
def interval_delta(payload: DeltaIn):
    return _run(ops.interval_delta, payload)


@app.post("/v1/intervals/project", response_model=ProjectionOut, response_model_exclude_none=True)
def interval_project(payload: ProjectIn):
    return _run(ops.interval_project, payload)


@app.post("/v1/trees/ccl", response_model=TreeOut, response_model_exclude_none=True)
def tree_ccl(payload: CclIn):
    return _run(ops.tree_ccl, payload)


@app.post("/v1/trees/project", response_model=ProjectionOut, response_model_exclude_none=True)
def tree_project(payload: TreeProjectIn):
    return _run(ops.tree_project, payload)


@app.post("/v1/trees/isomorphic", response_model=IsomorphicOut)
def tree_isomorphic(payload: IsomorphicIn):
    return _run(ops.tree_isomorphic, payload)


# ---------- paths ----------
@app.post("/v1/paths/test", response_model=EntourageTestOut)
def path_test(payload: PathTestIn):
    return _run(ops.path_test, payload)


@app.post("/v1/paths/parallel", response_model=ParallelOut, response_model_exclude_none=True)
def path_parallel(payload: ParallelIn):
    return _run(ops.path_parallel, payload)


@app.post("/v1/paths/axioms", response_model=AxiomsOut)
def path_axioms(payload: AxiomsIn):
    return _run(ops.path_axioms, payload)


# ---------- types ----------
@app.post("/v1/types/distance", response_model=TypeDistanceOut)
def types_distance(payload: TypeDistanceIn):
    return _run(ops.types_distance, payload)


@app.post("/v1/types/oracle", response_model=TypeDistanceOut)
def types_oracle(payload: TypeDistanceIn):
    return _run(ops.types_oracle, payload)


# ---------- property suites ----------
@app.post("/v1/properties/run", response_model=RunReportOut)
def prop_run(payload: SuiteRunIn):
    return _run(ops.prop_run, payload)
