"""
Compact topometric base spaces (X, tau, der) with open metric.

Three concrete presentations share one interface:
  - FiniteDiscrete: finitely many points, discrete topology, explicit metric matrix.
  - IntervalSpace: [0, D] with der(x, y) = |x - y| and the metric topology.
  - TailCompactification: N u {INF}, {0,1}-metric, finite points isolated and the
    neighbourhoods of INF cofinite. The metric is strictly finer than the topology here.

Everything is exact: scalars are Fractions, and INFINITY is the only non-rational value.
"""
from __future__ import annotations
import logging
import math
from abc import ABC, abstractmethod
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering
from itertools import count
from typing import Any, ClassVar, Dict, FrozenSet, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import TypeAdapter

import config
from errors import (
    EmptyChoice,
    FunctionNotLipschitz,
    MalformedSpace,
    MetricAxiomViolation,
    RForestError,
    SeparationImpossible,
    SinglePointSpace,
    UnknownPoint,
)
from schemas import (
    INFINITY,
    FiniteDiscreteIn,
    IntervalSpaceIn,
    SpaceIn,
    TailCompactificationIn,
    format_rational,
    parse_rational,
)

logger = logging.getLogger(__name__)

_SPACE_ADAPTER: TypeAdapter = TypeAdapter(SpaceIn)


@total_ordering
class _TailInfinity:
    """The compactification point of the tail space. Compares above every natural."""
    _instance: Optional["_TailInfinity"] = None

    def __new__(cls) -> "_TailInfinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __hash__(self) -> int:
        return hash("rforest.tail.INF")

    def __reduce__(self):
        return (_TailInfinity, ())


INF = _TailInfinity()

BasePoint = Union[int, Fraction, _TailInfinity]


# ---------- rational helpers ----------
def least_denominator_between(lo: Fraction, hi: Fraction, lo_closed: bool, hi_closed: bool) -> Fraction:
    """Rational with least denominator (then least numerator) in the given interval."""
    if lo == hi:
        return lo
    for q in count(1):
        p = math.ceil(lo * q) if lo_closed else math.floor(lo * q) + 1
        cand = Fraction(p, q)
        if cand < hi or (hi_closed and cand == hi):
            return cand
    raise AssertionError("unreachable")


def random_rational(
    rng: np.random.Generator,
    lo: Fraction,
    hi: Fraction,
    max_denominator: int,
    lo_closed: bool = True,
    hi_closed: bool = True,
) -> Fraction:
    """Seeded rational in the interval, denominators kept small where the interval allows."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        return lo
    q = int(rng.integers(1, max_denominator + 1))
    p_lo = math.ceil(lo * q) if lo_closed else math.floor(lo * q) + 1
    p_hi = math.floor(hi * q) if hi_closed else math.ceil(hi * q) - 1
    if p_lo <= p_hi:
        return Fraction(int(rng.integers(p_lo, p_hi + 1)), q)
    # interval too narrow for this denominator: interpolate strictly inside
    t = Fraction(int(rng.integers(1, max_denominator + 1)), max_denominator + 1)
    return lo + (hi - lo) * t


# ---------- regions of the interval space ----------
@dataclass(frozen=True, order=True)
class Span:
    """One connected piece of a subset of [0, D]; possibly a single closed point."""
    lo: Fraction
    hi: Fraction
    lo_closed: bool = False
    hi_closed: bool = False

    @property
    def start_key(self) -> Tuple[Fraction, int]:
        return self.lo, 0 if self.lo_closed else 1

    @property
    def end_key(self) -> Tuple[Fraction, int]:
        return self.hi, 0 if self.hi_closed else -1

    @property
    def is_empty(self) -> bool:
        return self.start_key > self.end_key

    def __contains__(self, x: Fraction) -> bool:
        return self.start_key <= (x, 0) <= self.end_key

    def intersect(self, other: "Span") -> "Span":
        lo, lo_flag = max(self.start_key, other.start_key)
        hi, hi_flag = min(self.end_key, other.end_key)
        return Span(lo, hi, lo_flag == 0, hi_flag == 0)


def _merge_spans(spans: Sequence[Span]) -> Tuple[Span, ...]:
    live = sorted((s for s in spans if not s.is_empty), key=lambda s: (s.start_key, s.end_key))
    out: list[Span] = []
    for s in live:
        if out:
            last = out[-1]
            touching = (last.hi, 1 if last.hi_closed else 0)
            if s.start_key <= touching:
                end = max(last.end_key, s.end_key)
                out[-1] = Span(last.lo, end[0], last.lo_closed, end[1] == 0)
                continue
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class IntervalRegion:
    spans: Tuple[Span, ...] = ()


@dataclass(frozen=True)
class TailRegion:
    """
    points with cofinite=False: exactly these naturals.
    points with cofinite=True: INF and every natural *not* in points.
    """
    points: FrozenSet[int] = frozenset()
    cofinite: bool = False


Region = Union[FrozenSet[int], IntervalRegion, TailRegion]
EntourageIndex = Union[Fraction, int]


# ---------- continuous function specs ----------
@dataclass(frozen=True)
class PointValues:
    values: Tuple[Fraction, ...]
    lipschitz: Fraction


@dataclass(frozen=True)
class PiecewiseLinear:
    knots: Tuple[Tuple[Fraction, Fraction], ...]
    lipschitz: Fraction


@dataclass(frozen=True)
class EventuallyConstant:
    head: Tuple[Fraction, ...]
    tail: Fraction
    lipschitz: Fraction


FunctionSpec = Union[PointValues, PiecewiseLinear, EventuallyConstant]


# ---------- the interface ----------
class BaseSpace(ABC):
    kind: ClassVar[str]

    # ----- points and metric -----
    @abstractmethod
    def der(self, x: BasePoint, y: BasePoint) -> Fraction: ...

    @property
    @abstractmethod
    def diameter(self) -> Fraction: ...

    @abstractmethod
    def contains(self, x: Any) -> bool: ...

    @abstractmethod
    def parse_point(self, raw: Any) -> BasePoint: ...

    @abstractmethod
    def format_point(self, x: BasePoint) -> Union[str, int]: ...

    @abstractmethod
    def describe(self) -> Dict[str, Any]: ...

    # ----- region algebra -----
    @abstractmethod
    def whole(self) -> Region: ...

    @abstractmethod
    def empty(self) -> Region: ...

    @abstractmethod
    def member(self, x: BasePoint, region: Region) -> bool: ...

    @abstractmethod
    def intersect(self, a: Region, b: Region) -> Region: ...

    @abstractmethod
    def closure(self, region: Region) -> Region: ...

    @abstractmethod
    def is_empty(self, region: Region) -> bool: ...

    @abstractmethod
    def fatten(self, region: Region, e: Fraction) -> Region:
        """S^{<e}: points at distance strictly below e from an open region."""

    @abstractmethod
    def fatten_closed(self, region: Region, s: Fraction) -> Region:
        """S^{<=s} of a closed region (closed again)."""

    @abstractmethod
    def format_region(self, region: Region) -> Dict[str, Any]: ...

    # ----- uniformity -----
    @abstractmethod
    def parse_entourage(self, raw: Any) -> EntourageIndex: ...

    @abstractmethod
    def entourage_member(self, i: EntourageIndex, x: BasePoint, y: BasePoint) -> bool: ...

    @abstractmethod
    def entourage_region(self, i: EntourageIndex, x: BasePoint) -> Region:
        """V_i(x) as an open region."""

    @abstractmethod
    def entourage_meet(self, i: EntourageIndex, j: EntourageIndex) -> EntourageIndex:
        """Basis index of V_i n V_j."""

    @abstractmethod
    def shrink(self, i: EntourageIndex, e: Fraction) -> Tuple[EntourageIndex, Fraction]:
        """(j, delta) with 0 < delta < e and cl(V_j(x))^{<=delta} contained in V_i(x) for all x."""

    def format_entourage(self, i: EntourageIndex) -> Union[str, int]:
        return format_rational(i) if isinstance(i, Fraction) else i

    # ----- constructive choices used by parallel paths -----
    @abstractmethod
    def separate(self, x: BasePoint, y: BasePoint, s: Fraction) -> Tuple[Region, Region]:
        """Open B containing x and C containing y with cl(B)^{<=s} disjoint from cl(C)."""

    @abstractmethod
    def pick_within(self, region: Region, y: BasePoint, b: Fraction) -> BasePoint:
        """Canonical point of region at distance < b from y. y itself when admissible."""

    # ----- continuous functions -----
    @abstractmethod
    def validate_function(self, f: FunctionSpec) -> FunctionSpec: ...

    @abstractmethod
    def eval_function(self, f: FunctionSpec, x: BasePoint) -> Fraction: ...

    @abstractmethod
    def distance_function(self, x: BasePoint) -> FunctionSpec:
        """der(., x) as a 1-Lipschitz FunctionSpec."""

    # ----- seeded samplers (generators) -----
    @abstractmethod
    def sample_point(self, rng: np.random.Generator, max_denominator: int) -> BasePoint: ...

    @abstractmethod
    def sample_near(self, x: BasePoint, radius: Fraction, rng: np.random.Generator,
                    max_denominator: int) -> BasePoint:
        """A point z with der(x, z) <= radius."""

    @abstractmethod
    def sample_in_region(self, region: Region, rng: np.random.Generator,
                         max_denominator: int) -> BasePoint: ...

    @abstractmethod
    def sample_entourage(self, rng: np.random.Generator, max_denominator: int) -> EntourageIndex: ...

    @abstractmethod
    def sample_function(self, rng: np.random.Generator, max_denominator: int) -> FunctionSpec: ...


def _metric_shrink(radius: Fraction, e: Fraction) -> Tuple[Fraction, Fraction]:
    return radius / 2, min(e, radius / 4) / 2


def _require_positive(q: Fraction, what: str) -> Fraction:
    if q <= 0:
        raise RForestError(f"{what} must be positive, got {format_rational(q)}")
    return q


# ---------- FiniteDiscrete ----------
@dataclass(frozen=True)
class FiniteDiscrete(BaseSpace):
    labels: Tuple[str, ...]
    metric: Tuple[Tuple[Fraction, ...], ...]
    kind: ClassVar[str] = "finite_discrete"

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def points(self) -> range:
        return range(len(self.labels))

    def der(self, x: int, y: int) -> Fraction:
        return self.metric[x][y]

    @cached_property
    def diameter(self) -> Fraction:
        return max(max(row) for row in self.metric)

    def contains(self, x: Any) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < len(self.labels)

    def parse_point(self, raw: Any) -> int:
        if isinstance(raw, str) and raw in self._index:
            return self._index[raw]
        raise UnknownPoint(raw, self.kind)

    def format_point(self, x: int) -> str:
        return self.labels[x]

    def describe(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "points": list(self.labels),
            "metric": [[format_rational(v) for v in row] for row in self.metric],
        }

    # ----- regions: plain index sets, every subset is open and closed -----
    def whole(self) -> FrozenSet[int]:
        return frozenset(self.points())

    def empty(self) -> FrozenSet[int]:
        return frozenset()

    def member(self, x: int, region: FrozenSet[int]) -> bool:
        return x in region

    def intersect(self, a: FrozenSet[int], b: FrozenSet[int]) -> FrozenSet[int]:
        return a & b

    def closure(self, region: FrozenSet[int]) -> FrozenSet[int]:
        return region

    def is_empty(self, region: FrozenSet[int]) -> bool:
        return not region

    def fatten(self, region: FrozenSet[int], e: Fraction) -> FrozenSet[int]:
        return frozenset(z for z in self.points() if any(self.der(z, s) < e for s in region))

    def fatten_closed(self, region: FrozenSet[int], s: Fraction) -> FrozenSet[int]:
        return frozenset(z for z in self.points() if any(self.der(z, w) <= s for w in region))

    def format_region(self, region: FrozenSet[int]) -> Dict[str, Any]:
        return {"points": [self.labels[i] for i in sorted(region)]}

    # ----- uniformity: V_r = {der < r} -----
    def parse_entourage(self, raw: Any) -> Fraction:
        return _require_positive(parse_rational(raw), "entourage radius")

    def entourage_member(self, i: Fraction, x: int, y: int) -> bool:
        return self.der(x, y) < i

    def entourage_region(self, i: Fraction, x: int) -> FrozenSet[int]:
        return frozenset(y for y in self.points() if self.der(x, y) < i)

    def entourage_meet(self, i: Fraction, j: Fraction) -> Fraction:
        return min(i, j)

    def shrink(self, i: Fraction, e: Fraction) -> Tuple[Fraction, Fraction]:
        return _metric_shrink(i, e)

    def separate(self, x: int, y: int, s: Fraction) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        if s < 0 or self.der(x, y) <= s:
            raise SeparationImpossible(self.format_point(x), self.format_point(y), s)
        near_x = self.fatten_closed(frozenset({x}), s)
        return frozenset({x}), self.whole() - near_x

    def pick_within(self, region: FrozenSet[int], y: int, b: Fraction) -> int:
        if b > 0 and y in region:
            return y
        for z in sorted(region):
            if self.der(y, z) < b:
                return z
        raise EmptyChoice(f"region n ball({self.format_point(y)}, {b})")

    # ----- functions -----
    def validate_function(self, f: FunctionSpec) -> PointValues:
        if not isinstance(f, PointValues) or len(f.values) != len(self.labels):
            raise MalformedSpace("finite_discrete functions need one value per point")
        for x in self.points():
            for y in self.points():
                if abs(f.values[x] - f.values[y]) > f.lipschitz * self.der(x, y):
                    raise FunctionNotLipschitz(f"({self.labels[x]}, {self.labels[y]})")
        return f

    def eval_function(self, f: PointValues, x: int) -> Fraction:
        return f.values[x]

    def distance_function(self, x: int) -> PointValues:
        return PointValues(tuple(self.der(z, x) for z in self.points()), Fraction(1))

    # ----- samplers -----
    def sample_point(self, rng: np.random.Generator, max_denominator: int) -> int:
        return int(rng.integers(len(self.labels)))

    def sample_near(self, x: int, radius: Fraction, rng: np.random.Generator, max_denominator: int) -> int:
        options = [z for z in self.points() if self.der(x, z) <= radius]
        return options[int(rng.integers(len(options)))]

    def sample_in_region(self, region: FrozenSet[int], rng: np.random.Generator, max_denominator: int) -> int:
        if not region:
            raise EmptyChoice("region")
        options = sorted(region)
        return options[int(rng.integers(len(options)))]

    def sample_entourage(self, rng: np.random.Generator, max_denominator: int) -> Fraction:
        return random_rational(rng, Fraction(0), self.diameter, max_denominator, lo_closed=False)

    def sample_function(self, rng: np.random.Generator, max_denominator: int) -> PointValues:
        values = tuple(random_rational(rng, Fraction(-3), Fraction(3), max_denominator) for _ in self.points())
        lipschitz = max(
            (abs(values[x] - values[y]) / self.der(x, y) for x in self.points() for y in self.points() if x != y),
            default=Fraction(0),
        )
        return PointValues(values, lipschitz)


# ---------- IntervalSpace ----------
@dataclass(frozen=True)
class IntervalSpace(BaseSpace):
    length: Fraction
    kind: ClassVar[str] = "interval"

    def der(self, x: Fraction, y: Fraction) -> Fraction:
        return abs(x - y)

    @property
    def diameter(self) -> Fraction:
        return self.length

    def contains(self, x: Any) -> bool:
        return isinstance(x, Fraction) and 0 <= x <= self.length

    def parse_point(self, raw: Any) -> Fraction:
        x = parse_rational(raw)
        if not 0 <= x <= self.length:
            raise UnknownPoint(raw, self.kind)
        return x

    def format_point(self, x: Fraction) -> str:
        return format_rational(x)

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "diameter": format_rational(self.length)}

    # ----- regions -----
    def _open_around(self, lo: Fraction, hi: Fraction) -> Span:
        """(lo, hi) relative to [0, D]: ends pushed past the boundary become closed at it."""
        return Span(max(lo, Fraction(0)), min(hi, self.length), lo < 0, hi > self.length)

    def whole(self) -> IntervalRegion:
        return IntervalRegion((Span(Fraction(0), self.length, True, True),))

    def empty(self) -> IntervalRegion:
        return IntervalRegion()

    def region(self, *spans: Span) -> IntervalRegion:
        return IntervalRegion(_merge_spans([s.intersect(self.whole().spans[0]) for s in spans]))

    def member(self, x: Fraction, region: IntervalRegion) -> bool:
        return any(x in s for s in region.spans)

    def intersect(self, a: IntervalRegion, b: IntervalRegion) -> IntervalRegion:
        return IntervalRegion(_merge_spans([s.intersect(t) for s in a.spans for t in b.spans]))

    def closure(self, region: IntervalRegion) -> IntervalRegion:
        return IntervalRegion(_merge_spans([Span(s.lo, s.hi, True, True) for s in region.spans]))

    def is_empty(self, region: IntervalRegion) -> bool:
        return not region.spans

    def fatten(self, region: IntervalRegion, e: Fraction) -> IntervalRegion:
        if e <= 0:
            return self.empty()
        return IntervalRegion(_merge_spans([self._open_around(s.lo - e, s.hi + e) for s in region.spans]))

    def fatten_closed(self, region: IntervalRegion, s: Fraction) -> IntervalRegion:
        return IntervalRegion(_merge_spans([
            Span(max(sp.lo - s, Fraction(0)), min(sp.hi + s, self.length), True, True) for sp in region.spans
        ]))

    def format_region(self, region: IntervalRegion) -> Dict[str, Any]:
        return {"components": [
            {"lo": format_rational(s.lo), "hi": format_rational(s.hi),
             "lo_closed": s.lo_closed, "hi_closed": s.hi_closed}
            for s in region.spans
        ]}

    # ----- uniformity -----
    def parse_entourage(self, raw: Any) -> Fraction:
        return _require_positive(parse_rational(raw), "entourage radius")

    def entourage_member(self, i: Fraction, x: Fraction, y: Fraction) -> bool:
        return abs(x - y) < i

    def entourage_region(self, i: Fraction, x: Fraction) -> IntervalRegion:
        return IntervalRegion((self._open_around(x - i, x + i),))

    def entourage_meet(self, i: Fraction, j: Fraction) -> Fraction:
        return min(i, j)

    def shrink(self, i: Fraction, e: Fraction) -> Tuple[Fraction, Fraction]:
        return _metric_shrink(i, e)

    def separate(self, x: Fraction, y: Fraction, s: Fraction) -> Tuple[IntervalRegion, IntervalRegion]:
        gap = abs(x - y) - s
        if s < 0 or gap <= 0:
            raise SeparationImpossible(format_rational(x), format_rational(y), s)
        rho = gap / 3
        return self.entourage_region(rho, x), self.entourage_region(rho, y)

    def pick_within(self, region: IntervalRegion, y: Fraction, b: Fraction) -> Fraction:
        if b > 0 and self.member(y, region):
            return y
        admissible = self.intersect(region, self.entourage_region(b, y)) if b > 0 else self.empty()
        if not admissible.spans:
            raise EmptyChoice(f"region n ball({format_rational(y)}, {format_rational(b)})")
        s = admissible.spans[0]
        return least_denominator_between(s.lo, s.hi, s.lo_closed, s.hi_closed)

    # ----- functions -----
    def validate_function(self, f: FunctionSpec) -> PiecewiseLinear:
        if not isinstance(f, PiecewiseLinear) or len(f.knots) < 2:
            raise MalformedSpace("interval functions are piecewise-linear with at least two knots")
        xs = [k[0] for k in f.knots]
        if xs[0] != 0 or xs[-1] != self.length or any(a >= b for a, b in zip(xs, xs[1:])):
            raise MalformedSpace("knots must increase strictly from 0 to D")
        for (x0, v0), (x1, v1) in zip(f.knots, f.knots[1:]):
            if abs(v1 - v0) > f.lipschitz * (x1 - x0):
                raise FunctionNotLipschitz(f"piece [{format_rational(x0)}, {format_rational(x1)}]")
        return f

    def eval_function(self, f: PiecewiseLinear, x: Fraction) -> Fraction:
        xs = [k[0] for k in f.knots]
        i = min(max(bisect_right(xs, x) - 1, 0), len(xs) - 2)
        (x0, v0), (x1, v1) = f.knots[i], f.knots[i + 1]
        return v0 + (v1 - v0) * (x - x0) / (x1 - x0)

    def distance_function(self, x: Fraction) -> PiecewiseLinear:
        xs = sorted({Fraction(0), x, self.length})
        return PiecewiseLinear(tuple((t, abs(t - x)) for t in xs), Fraction(1))

    # ----- samplers -----
    def sample_point(self, rng: np.random.Generator, max_denominator: int) -> Fraction:
        return random_rational(rng, Fraction(0), self.length, max_denominator)

    def sample_near(self, x: Fraction, radius: Fraction, rng: np.random.Generator,
                    max_denominator: int) -> Fraction:
        lo, hi = max(Fraction(0), x - radius), min(self.length, x + radius)
        return random_rational(rng, lo, hi, max_denominator)

    def sample_in_region(self, region: IntervalRegion, rng: np.random.Generator,
                         max_denominator: int) -> Fraction:
        if not region.spans:
            raise EmptyChoice("region")
        s = region.spans[int(rng.integers(len(region.spans)))]
        return random_rational(rng, s.lo, s.hi, max_denominator, s.lo_closed, s.hi_closed)

    def sample_entourage(self, rng: np.random.Generator, max_denominator: int) -> Fraction:
        return random_rational(rng, Fraction(0), self.length, max_denominator, lo_closed=False)

    def sample_function(self, rng: np.random.Generator, max_denominator: int) -> PiecewiseLinear:
        inner = {random_rational(rng, Fraction(0), self.length, max_denominator, False, False)
                 for _ in range(int(rng.integers(0, 3)))}
        xs = sorted({Fraction(0), self.length} | inner)
        knots = tuple((t, random_rational(rng, Fraction(-5), Fraction(5), max_denominator)) for t in xs)
        lipschitz = max(abs(v1 - v0) / (x1 - x0) for (x0, v0), (x1, v1) in zip(knots, knots[1:]))
        return PiecewiseLinear(knots, lipschitz)


# ---------- TailCompactification ----------
def _in_tail(n: int, z: BasePoint) -> bool:
    return z is INF or z >= n


@dataclass(frozen=True)
class TailCompactification(BaseSpace):
    bound: int = config.TAIL_TRUNCATION_BOUND
    kind: ClassVar[str] = "tail_compactification"

    def der(self, x: BasePoint, y: BasePoint) -> Fraction:
        return Fraction(0) if x == y else Fraction(1)

    @property
    def diameter(self) -> Fraction:
        return Fraction(1)

    def contains(self, x: Any) -> bool:
        return x is INF or (isinstance(x, int) and not isinstance(x, bool) and x >= 0)

    def parse_point(self, raw: Any) -> BasePoint:
        if raw == "INF":
            return INF
        if isinstance(raw, str) and raw.isdigit():
            raw = int(raw)
        if isinstance(raw, int) and not isinstance(raw, bool) and 0 <= raw <= self.bound:
            return raw
        raise UnknownPoint(raw, self.kind)

    def format_point(self, x: BasePoint) -> Union[str, int]:
        return "INF" if x is INF else x

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "bound": self.bound}

    # ----- regions -----
    def whole(self) -> TailRegion:
        return TailRegion(frozenset(), True)

    def empty(self) -> TailRegion:
        return TailRegion(frozenset(), False)

    def member(self, x: BasePoint, region: TailRegion) -> bool:
        if x is INF:
            return region.cofinite
        return (x in region.points) != region.cofinite

    def intersect(self, a: TailRegion, b: TailRegion) -> TailRegion:
        if a.cofinite and b.cofinite:
            return TailRegion(a.points | b.points, True)
        if a.cofinite:
            return TailRegion(b.points - a.points, False)
        if b.cofinite:
            return TailRegion(a.points - b.points, False)
        return TailRegion(a.points & b.points, False)

    def closure(self, region: TailRegion) -> TailRegion:
        # finite sets of naturals are closed, cofinite-with-INF sets are clopen
        return region

    def is_empty(self, region: TailRegion) -> bool:
        return not region.cofinite and not region.points

    def fatten(self, region: TailRegion, e: Fraction) -> TailRegion:
        if e <= 0 or self.is_empty(region):
            return self.empty()
        return region if e <= 1 else self.whole()

    def fatten_closed(self, region: TailRegion, s: Fraction) -> TailRegion:
        if s < 1 or self.is_empty(region):
            return region
        return self.whole()

    def format_region(self, region: TailRegion) -> Dict[str, Any]:
        return {"naturals": sorted(region.points), "cofinite": region.cofinite}

    # ----- uniformity: V_n = diagonal u T_n x T_n -----
    def parse_entourage(self, raw: Any) -> int:
        if isinstance(raw, str) and raw.isdigit():
            raw = int(raw)
        if isinstance(raw, int) and not isinstance(raw, bool) and raw >= 0:
            return raw
        raise RForestError(f"tail entourage index must be a natural number, got {raw!r}")

    def format_entourage(self, i: int) -> int:
        return i

    def entourage_member(self, i: int, x: BasePoint, y: BasePoint) -> bool:
        return x == y or (_in_tail(i, x) and _in_tail(i, y))

    def entourage_region(self, i: int, x: BasePoint) -> TailRegion:
        if _in_tail(i, x):
            return TailRegion(frozenset(range(i)), True)
        return TailRegion(frozenset({x}), False)

    def entourage_meet(self, i: int, j: int) -> int:
        return max(i, j)

    def shrink(self, i: int, e: Fraction) -> Tuple[int, Fraction]:
        # any fattening by less than 1 is the identity here
        return i, min(e, Fraction(1)) / 2

    def separate(self, x: BasePoint, y: BasePoint, s: Fraction) -> Tuple[TailRegion, TailRegion]:
        if s < 0 or x == y or s >= 1:
            raise SeparationImpossible(self.format_point(x), self.format_point(y), s)
        if x is INF:
            return TailRegion(frozenset({y}), True), TailRegion(frozenset({y}), False)
        if y is INF:
            return TailRegion(frozenset({x}), False), TailRegion(frozenset({x}), True)
        return TailRegion(frozenset({x}), False), TailRegion(frozenset({y}), False)

    def pick_within(self, region: TailRegion, y: BasePoint, b: Fraction) -> BasePoint:
        if b > 0 and self.member(y, region):
            return y
        if b > 1 and not self.is_empty(region):
            if not region.cofinite:
                return min(region.points)
            return next(n for n in count() if n not in region.points)
        raise EmptyChoice(f"region n ball({self.format_point(y)}, {b})")

    # ----- functions -----
    def validate_function(self, f: FunctionSpec) -> EventuallyConstant:
        if not isinstance(f, EventuallyConstant):
            raise MalformedSpace("tail functions are eventually constant")
        values = list(f.head) + [f.tail]
        if max(values) - min(values) > f.lipschitz:
            raise FunctionNotLipschitz("range diameter exceeds L")
        return f

    def eval_function(self, f: EventuallyConstant, x: BasePoint) -> Fraction:
        if x is INF or x >= len(f.head):
            return f.tail
        return f.head[x]

    def distance_function(self, x: BasePoint) -> EventuallyConstant:
        if x is INF:
            raise RForestError("der(., INF) is not continuous on the tail space")
        return EventuallyConstant((Fraction(1),) * x + (Fraction(0),), Fraction(1), Fraction(1))

    # ----- samplers -----
    def sample_point(self, rng: np.random.Generator, max_denominator: int) -> BasePoint:
        n = int(rng.integers(0, 9))
        return INF if n == 8 else n

    def sample_near(self, x: BasePoint, radius: Fraction, rng: np.random.Generator,
                    max_denominator: int) -> BasePoint:
        return self.sample_point(rng, max_denominator) if radius >= 1 else x

    def sample_in_region(self, region: TailRegion, rng: np.random.Generator,
                         max_denominator: int) -> BasePoint:
        if self.is_empty(region):
            raise EmptyChoice("region")
        if not region.cofinite:
            options = sorted(region.points)
            return options[int(rng.integers(len(options)))]
        if int(rng.integers(4)) == 0:
            return INF
        top = max(region.points, default=0) + 6
        options = [n for n in range(top) if n not in region.points]
        return options[int(rng.integers(len(options)))]

    def sample_entourage(self, rng: np.random.Generator, max_denominator: int) -> int:
        return int(rng.integers(0, 9))

    def sample_function(self, rng: np.random.Generator, max_denominator: int) -> EventuallyConstant:
        head = tuple(random_rational(rng, Fraction(-3), Fraction(3), max_denominator)
                     for _ in range(int(rng.integers(0, 5))))
        tail = random_rational(rng, Fraction(-3), Fraction(3), max_denominator)
        values = list(head) + [tail]
        return EventuallyConstant(head, tail, max(values) - min(values))


# ---------- validation ----------
def _build_finite(desc: FiniteDiscreteIn) -> FiniteDiscrete:
    labels = tuple(desc.points)
    n = len(labels)
    if len(set(labels)) != n:
        raise MalformedSpace("point labels must be distinct")
    if n < 2:
        raise SinglePointSpace()
    if len(desc.metric) != n or any(len(row) != n for row in desc.metric):
        raise MalformedSpace(f"metric must be a {n}x{n} matrix")
    m = tuple(tuple(parse_rational(v) for v in row) for row in desc.metric)
    for x in range(n):
        if m[x][x] != 0:
            raise MetricAxiomViolation((labels[x], labels[x]), "der(x,x) must be 0")
        for y in range(n):
            if m[x][y] != m[y][x]:
                raise MetricAxiomViolation((labels[x], labels[y]), "not symmetric")
            if x != y and m[x][y] <= 0:
                raise MetricAxiomViolation((labels[x], labels[y]), "distinct points at distance <= 0")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if m[x][y] > m[x][z] + m[z][y]:
                    raise MetricAxiomViolation((labels[x], labels[y], labels[z]), "triangle inequality")
    return FiniteDiscrete(labels, m)


def validate_space(desc: Any) -> BaseSpace:
    """Parse and validate a JSON space description (dict or pydantic model)."""
    model = desc if isinstance(desc, (FiniteDiscreteIn, IntervalSpaceIn, TailCompactificationIn)) \
        else _SPACE_ADAPTER.validate_python(desc)
    if isinstance(model, FiniteDiscreteIn):
        space: BaseSpace = _build_finite(model)
    elif isinstance(model, IntervalSpaceIn):
        length = parse_rational(model.diameter)
        if length == 0:
            raise SinglePointSpace()
        if length < 0:
            raise MalformedSpace("interval diameter must be positive")
        space = IntervalSpace(length)
    else:
        bound = config.TAIL_TRUNCATION_BOUND if model.bound is None else model.bound
        if bound < 1:
            raise MalformedSpace("tail truncation bound must be at least 1")
        space = TailCompactification(bound)
    logger.debug("validated %s space, diameter %s", space.kind, format_rational(space.diameter))
    return space


def diameter(space: BaseSpace) -> Fraction:
    return space.diameter


__all__ = [
    "INF", "INFINITY", "BasePoint", "BaseSpace", "EntourageIndex", "EventuallyConstant",
    "FiniteDiscrete", "FunctionSpec", "IntervalRegion", "IntervalSpace", "PiecewiseLinear",
    "PointValues", "Region", "Span", "TailCompactification", "TailRegion", "diameter",
    "least_denominator_between", "random_rational", "validate_space",
]
