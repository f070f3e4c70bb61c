"""JSON <-> domain conversion. Shapes are checked by the pydantic models in schemas.py."""
from __future__ import annotations
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Any, Optional, Union

from pydantic import BaseModel, TypeAdapter

from base_space import INF, BaseSpace, EventuallyConstant, FunctionSpec, PiecewiseLinear, PointValues
from errors import MalformedSpace, RForestError
from forest import ForestElement, make_element
from path_space import Path, PointedFiniteMetric, make_path, make_pointed_metric
from schemas import (
    BreakpointOut,
    DeskModelIn,
    ElementIn,
    FunctionIn,
    ElementOut,
    InfiniteTypeIn,
    PathIn,
    PathTypeIn,
    PathOut,
    PathPointOut,
    PointedMetricIn,
    TreeIn,
    TypePointIn,
    ArcElementOut,
    IntervalOut,
    TreeOut,
    format_rational,
    parse_rational,
)
from tree_geometry import FiniteTree, Interval, make_finite_tree
from type_space import DeskModel, InfiniteType, PathType, TypePoint, make_desk_model

_TYPE_ADAPTER: TypeAdapter = TypeAdapter(TypePointIn)
_FUNCTION_ADAPTER: TypeAdapter = TypeAdapter(FunctionIn)


def _model(cls, raw: Any):
    return raw if isinstance(raw, cls) else cls.model_validate(raw)


def load_json_file(path: Union[str, FilePath]) -> Any:
    try:
        return json.loads(FilePath(path).read_text())
    except json.JSONDecodeError as e:
        raise RForestError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from None
    except OSError as e:
        raise RForestError(f"{path}: {e.strerror}") from None


# ---------- elements and paths ----------
def element_from_json(space: BaseSpace, raw: Any) -> ForestElement:
    model = _model(ElementIn, raw)
    return make_element(
        space,
        [parse_rational(b.r) for b in model.breakpoints],
        [space.parse_point(b.x) for b in model.breakpoints],
        [b.label for b in model.breakpoints],
    )


def element_to_json(space: BaseSpace, k: ForestElement) -> dict:
    out = ElementOut(breakpoints=[
        BreakpointOut(r=format_rational(r), x=space.format_point(x), label=k.labels[i] if i < len(k.labels) else None)
        for i, (r, x) in enumerate(zip(k.breakpoints, k.values))
    ])
    return out.model_dump(exclude_none=True)


def path_from_json(space: BaseSpace, raw: Any) -> Path:
    model = _model(PathIn, raw)
    return make_path(
        space,
        [parse_rational(b.r) for b in model.breakpoints],
        [space.parse_point(b.x) for b in model.breakpoints],
    )


def path_to_json(space: BaseSpace, f: Path) -> dict:
    return PathOut(breakpoints=[
        PathPointOut(r=format_rational(r), x=space.format_point(x)) for r, x in zip(f.breakpoints, f.values)
    ]).model_dump()


# ---------- intervals, trees, desk models ----------
def interval_to_json(space: BaseSpace, iv: Interval, path: Optional[Path] = None) -> dict:
    return IntervalOut(
        length=format_rational(iv.length),
        elements=[
            ArcElementOut(position=format_rational(p), element=element_to_json(space, e))
            for p, e in zip(iv.positions, iv.elements)
        ],
        path=None if path is None else path_to_json(space, path),
    ).model_dump(exclude_none=True)


def tree_from_json(space: BaseSpace, raw: Any) -> FiniteTree:
    model = _model(TreeIn, raw)
    return make_finite_tree([
        (element_from_json(space, k), element_from_json(space, l)) for k, l in model.intervals
    ])


def tree_to_json(space: BaseSpace, tree: FiniteTree) -> dict:
    return TreeOut(elements=[element_to_json(space, e) for e in tree.elements]).model_dump(exclude_none=True)


def desk_model_from_json(space: BaseSpace, raw: Any) -> DeskModel:
    model = _model(DeskModelIn, raw)
    return make_desk_model([tree_from_json(space, t) for t in model.trees])


def type_from_json(space: BaseSpace, raw: Any) -> TypePoint:
    model = raw if isinstance(raw, (PathTypeIn, InfiniteTypeIn)) else _TYPE_ADAPTER.validate_python(raw)
    if model.kind == "infinite":
        return InfiniteType(space.parse_point(model.x))
    return PathType(element_from_json(space, model.m), path_from_json(space, model.f))


def pointed_metric_from_json(raw: Any) -> PointedFiniteMetric:
    model = _model(PointedMetricIn, raw)
    return make_pointed_metric(
        model.points,
        [[parse_rational(v) for v in row] for row in model.metric],
        model.basepoint,
    )


def function_from_json(space: BaseSpace, raw: Any) -> FunctionSpec:
    """Decode and check a function spec against its space (shape, knots, Lipschitz constant)."""
    model = raw if isinstance(raw, BaseModel) else _FUNCTION_ADAPTER.validate_python(raw)
    lipschitz = parse_rational(model.lipschitz)
    if lipschitz < 0:
        raise RForestError("Lipschitz constant must be nonnegative")
    if model.kind == "point_values":
        f: FunctionSpec = PointValues(tuple(parse_rational(v) for v in model.values), lipschitz)
    elif model.kind == "piecewise_linear":
        f = PiecewiseLinear(tuple((parse_rational(x), parse_rational(v)) for x, v in model.knots), lipschitz)
    else:
        f = EventuallyConstant(tuple(parse_rational(v) for v in model.head), parse_rational(model.tail), lipschitz)
    return space.validate_function(f)


# ---------- counterexamples ----------
def to_jsonable(space: BaseSpace, obj: Any) -> Any:
    """Best-effort serialisation of counterexample payloads."""
    if isinstance(obj, ForestElement):
        return element_to_json(space, obj)
    if isinstance(obj, Path):
        return path_to_json(space, obj)
    if isinstance(obj, BaseModel):
        return obj.model_dump(exclude_none=True)
    if obj is INF:
        return "INF"
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (Fraction, float)):
        return format_rational(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(space, v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(space, v) for v in obj]
    if isinstance(obj, (PathType, InfiniteType)):
        if isinstance(obj, InfiniteType):
            return {"kind": "infinite", "x": space.format_point(obj.x)}
        return {"kind": "path", "m": to_jsonable(space, obj.m), "f": to_jsonable(space, obj.f)}
    if is_dataclass(obj):
        return {f.name: to_jsonable(space, getattr(obj, f.name)) for f in fields(obj)}
    raise MalformedSpace(f"cannot serialise {type(obj).__name__}")
