"""
Wire formats. Pydantic checks the *shape* of every JSON payload; the domain
builders (base_space, forest, ...) check the mathematics.
"""
from __future__ import annotations
import math
import re
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, StrictInt, StrictStr

import config
from errors import NonRationalValue

# ---------- rationals ----------
_RATIONAL_RE = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")

INFINITY = math.inf
INFINITY_TEXT = "inf"

RawRational = Union[StrictStr, StrictInt]
RawPoint = Union[StrictStr, StrictInt]


def parse_rational(raw: Any) -> Fraction:
    if isinstance(raw, bool):
        raise NonRationalValue(raw)
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, Fraction):
        return raw
    if not isinstance(raw, str) or not _RATIONAL_RE.match(raw):
        raise NonRationalValue(raw)
    try:
        return Fraction(raw.replace(" ", ""))
    except ZeroDivisionError:
        raise NonRationalValue(raw) from None


def format_rational(q: Union[Fraction, float]) -> str:
    if q == INFINITY:
        return INFINITY_TEXT
    return str(Fraction(q))


# ---------- spaces ----------
class FiniteDiscreteIn(BaseModel):
    kind: Literal["finite_discrete"]
    points: List[StrictStr] = Field(..., examples=[["a", "b", "c"]])
    metric: List[List[RawRational]]


class IntervalSpaceIn(BaseModel):
    kind: Literal["interval"]
    diameter: RawRational = Field(..., examples=["10"])


class TailCompactificationIn(BaseModel):
    kind: Literal["tail_compactification"]
    bound: Optional[int] = None


SpaceIn = Annotated[
    Union[FiniteDiscreteIn, IntervalSpaceIn, TailCompactificationIn],
    Field(discriminator="kind"),
]


class SpaceEnvelope(BaseModel):
    space: SpaceIn


# ---------- elements / paths ----------
class BreakpointIn(BaseModel):
    r: RawRational
    x: RawPoint
    label: Optional[NonNegativeInt] = None


class ElementIn(BaseModel):
    breakpoints: List[BreakpointIn] = Field(..., min_length=1)


class PathPointIn(BaseModel):
    r: RawRational
    x: RawPoint


class PathIn(BaseModel):
    breakpoints: List[PathPointIn] = Field(..., min_length=1)


class PathTypeIn(BaseModel):
    kind: Literal["path"]
    m: ElementIn
    f: PathIn


class InfiniteTypeIn(BaseModel):
    kind: Literal["infinite"]
    x: RawPoint


TypePointIn = Annotated[Union[PathTypeIn, InfiniteTypeIn], Field(discriminator="kind")]


class TreeIn(BaseModel):
    intervals: List[Tuple[ElementIn, ElementIn]] = Field(..., min_length=1)


class DeskModelIn(BaseModel):
    trees: List[TreeIn] = Field(..., min_length=1)


class PointedMetricIn(BaseModel):
    points: List[StrictStr] = Field(..., min_length=1)
    metric: List[List[RawRational]]
    basepoint: NonNegativeInt = 0


# ---------- continuous functions (one shape per space kind) ----------
class PointValuesIn(BaseModel):
    kind: Literal["point_values"]
    values: List[RawRational] = Field(..., min_length=1)
    lipschitz: RawRational


class PiecewiseLinearIn(BaseModel):
    kind: Literal["piecewise_linear"]
    knots: List[Tuple[RawRational, RawRational]] = Field(..., min_length=2, examples=[[["0", "0"], ["10", "5"]]])
    lipschitz: RawRational


class EventuallyConstantIn(BaseModel):
    kind: Literal["eventually_constant"]
    head: List[RawRational]
    tail: RawRational
    lipschitz: RawRational


FunctionIn = Annotated[
    Union[PointValuesIn, PiecewiseLinearIn, EventuallyConstantIn],
    Field(discriminator="kind"),
]


# ---------- outputs ----------
class BreakpointOut(BaseModel):
    r: str
    x: RawPoint
    label: Optional[int] = None


class ElementOut(BaseModel):
    breakpoints: List[BreakpointOut]


class PathPointOut(BaseModel):
    r: str
    x: RawPoint


class PathOut(BaseModel):
    breakpoints: List[PathPointOut]


class SpaceCheckOut(BaseModel):
    valid: bool
    kind: str
    diameter: str
    space: Dict[str, Any]


class DistanceOut(BaseModel):
    d: str
    d_trunc: Optional[str] = None


class MeetOut(BaseModel):
    same_component: bool
    meet: Optional[ElementOut] = None


class TipOut(BaseModel):
    x: RawPoint


class PredicateOut(BaseModel):
    value: str


class IsomorphicOut(BaseModel):
    isomorphic: bool


class ArcElementOut(BaseModel):
    position: str
    element: ElementOut


class IntervalOut(BaseModel):
    length: str
    elements: List[ArcElementOut]
    path: Optional[PathOut] = None


class DeltaOut(BaseModel):
    delta: str
    distance: str


class ProjectionOut(BaseModel):
    projection: ElementOut
    distance: str


class TreeOut(BaseModel):
    elements: List[ElementOut]


class EntourageTestOut(BaseModel):
    member: bool


class BuildOut(BaseModel):
    x: RawPoint
    path: Optional[PathOut] = None
    entourage_test: Optional[bool] = None
    error: Optional[str] = None


class ParallelOut(BaseModel):
    region: Dict[str, Any]
    gamma: str
    builds: List[BuildOut] = Field(default_factory=list)


class AxiomsOut(BaseModel):
    holds: bool


class TypeDistanceOut(BaseModel):
    d: str


class ViolationOut(BaseModel):
    model_config = ConfigDict(extra="forbid")
    case: int
    check: str
    counterexample: Dict[str, Any]


class RunReportOut(BaseModel):
    suite: str
    seed: int
    cases: int
    violations: List[ViolationOut]
    wall_time: float


# ---------- request envelopes (CLI files and HTTP bodies) ----------
class DistanceIn(BaseModel):
    space: SpaceIn
    a: ElementIn
    b: ElementIn
    s: Optional[RawRational] = None


class MeetIn(BaseModel):
    space: SpaceIn
    elements: List[ElementIn] = Field(..., min_length=1)


class RestrictIn(BaseModel):
    space: SpaceIn
    element: ElementIn
    r: RawRational


class TipIn(BaseModel):
    space: SpaceIn
    element: ElementIn


class PredicateIn(BaseModel):
    space: SpaceIn
    element: ElementIn
    function: FunctionIn


class IntervalIn(BaseModel):
    space: SpaceIn
    a: ElementIn
    b: ElementIn


class DeltaIn(IntervalIn):
    r: RawRational
    x: ElementIn


class ProjectIn(IntervalIn):
    x: ElementIn


class IsomorphicIn(BaseModel):
    """[a, b] based at a against [c, d] based at c."""
    space: SpaceIn
    a: ElementIn
    b: ElementIn
    c: ElementIn
    d: ElementIn


class CclIn(BaseModel):
    space: SpaceIn
    elements: List[ElementIn] = Field(..., min_length=1)


class TreeProjectIn(BaseModel):
    space: SpaceIn
    tree: TreeIn
    x: ElementIn


class PathTestIn(BaseModel):
    space: SpaceIn
    f: PathIn
    g: PathIn
    V: RawRational
    e: RawRational


class ParallelIn(BaseModel):
    space: SpaceIn
    f: PathIn
    V: RawRational
    e: RawRational
    points: List[RawPoint] = Field(default_factory=list)


class AxiomsIn(BaseModel):
    metric: PointedMetricIn
    r: RawRational


class TypeDistanceIn(BaseModel):
    space: SpaceIn
    model: DeskModelIn
    t1: TypePointIn
    t2: TypePointIn


class SuiteRunIn(BaseModel):
    suite: str
    space: SpaceIn
    seed: NonNegativeInt = config.DEFAULT_SEED
    cases: int = Field(config.DEFAULT_CASES, ge=1)
    max_breakpoints: int = Field(config.DEFAULT_MAX_BREAKPOINTS, ge=1)
    max_family: int = Field(config.DEFAULT_MAX_FAMILY, ge=1)
    max_intervals: int = Field(config.DEFAULT_MAX_INTERVALS, ge=1)
    max_denominator: int = Field(config.DEFAULT_MAX_DENOMINATOR, ge=1)


class DiameterOut(BaseModel):
    diameter: str
