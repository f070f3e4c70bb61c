"""
The path space P(X): partial 1-Lipschitz maps with finite domain containing 0.

Besides the path values themselves this module carries the U_{V,e} uniformity,
the finite path-metric axiom checker and the Parallel Paths construction, which
turns a path f and an entourage (V, e) into an open neighbourhood O of f(0)
together with a map sending each x in O to a U_{V,e}-close path starting at x.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from base_space import BasePoint, BaseSpace, EntourageIndex, Region
from errors import (
    LipschitzViolation,
    MalformedElement,
    MalformedSpace,
    MetricAxiomViolation,
    MissingZeroBreakpoint,
    PointOutsideO,
    RForestError,
    UnknownPoint,
)
from forest import ForestElement, distance
from schemas import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Path:
    breakpoints: Tuple[Fraction, ...]
    values: Tuple[BasePoint, ...]

    @property
    def length(self) -> Fraction:
        return self.breakpoints[-1]

    @property
    def root(self) -> BasePoint:
        return self.values[0]

    @property
    def tip(self) -> BasePoint:
        return self.values[-1]

    def prefix(self, k: int) -> "Path":
        return Path(self.breakpoints[: k + 1], self.values[: k + 1])


def make_path(space: BaseSpace, breakpoints: Sequence[Fraction], values: Sequence[BasePoint]) -> Path:
    if not breakpoints or len(breakpoints) != len(values):
        raise MalformedElement("a path needs matching nonempty breakpoints and values")
    if breakpoints[0] != 0:
        raise MissingZeroBreakpoint()
    for x in values:
        if not space.contains(x):
            raise UnknownPoint(x, space.kind)
    for i in range(len(breakpoints) - 1):
        gap = breakpoints[i + 1] - breakpoints[i]
        if gap <= 0:
            raise MalformedElement(f"breakpoints must increase strictly (index {i})")
        if space.der(values[i], values[i + 1]) > gap:
            raise LipschitzViolation(i)
    return Path(tuple(Fraction(r) for r in breakpoints), tuple(values))


def point_path(x: BasePoint) -> Path:
    return Path((Fraction(0),), (x,))


def path_of(k: ForestElement) -> Path:
    return Path(k.breakpoints, k.values)


strip = path_of


def path_meet(f: Path, g: Path) -> Optional[Path]:
    if f.root != g.root:
        return None
    k = 0
    limit = min(len(f.breakpoints), len(g.breakpoints)) - 1
    while k < limit and f.breakpoints[k + 1] == g.breakpoints[k + 1] and f.values[k + 1] == g.values[k + 1]:
        k += 1
    return f.prefix(k)


# ---------- the U_{V,e} uniformity ----------
@dataclass(frozen=True)
class PathEntourage:
    V: EntourageIndex
    e: Fraction

    def __post_init__(self):
        if self.e <= 0:
            raise RForestError(f"path entourage needs e > 0, got {format_rational(self.e)}")


def _one_sided(space: BaseSpace, f: Path, g: Path, u: PathEntourage, flip: bool) -> bool:
    for r, x in zip(f.breakpoints, f.values):
        ok = False
        for s, y in zip(g.breakpoints, g.values):
            pair = (y, x) if flip else (x, y)
            if abs(r - s) < u.e and space.entourage_member(u.V, *pair):
                ok = True
                break
        if not ok:
            return False
    return True


def entourage_test(space: BaseSpace, f: Path, g: Path, u: PathEntourage) -> bool:
    """(f, g) in U_{V,e}: every breakpoint of either path has a V-close, e-near partner."""
    return _one_sided(space, f, g, u, flip=False) and _one_sided(space, g, f, u, flip=True)


@dataclass
class EntourageLawReport:
    pairs: int = 0
    triples: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def entourage_laws_check(
    space: BaseSpace,
    u: PathEntourage,
    w: PathEntourage,
    pairs: Sequence[Tuple[Path, Path]],
    triples: Sequence[Tuple[Path, Path, Path]],
) -> EntourageLawReport:
    """
    Intersection law: U_{V n W, min(e, d)} is inside U_{V,e} n U_{W,d}, on every pair.
    Composition law: with (W', e/2) from shrink(V, e), two U_{W',e/2} steps land in U_{V,e},
    on every triple.
    """
    report = EntourageLawReport()
    both = PathEntourage(space.entourage_meet(u.V, w.V), min(u.e, w.e))
    for f, g in pairs:
        report.pairs += 1
        if entourage_test(space, f, g, both) and not (
            entourage_test(space, f, g, u) and entourage_test(space, f, g, w)
        ):
            report.violations.append({"law": "intersection", "paths": [f, g]})
    j, _ = space.shrink(u.V, u.e)
    half = PathEntourage(j, u.e / 2)
    for f, g, h in triples:
        report.triples += 1
        if (
            entourage_test(space, f, g, half)
            and entourage_test(space, g, h, half)
            and not entourage_test(space, f, h, u)
        ):
            report.violations.append({"law": "composition", "paths": [f, g, h]})
    return report


# ---------- pointed finite metrics and the path-metric axioms ----------
@dataclass(frozen=True)
class PointedFiniteMetric:
    labels: Tuple[str, ...]
    metric: Tuple[Tuple[Fraction, ...], ...]
    basepoint: int = 0


def make_pointed_metric(
    labels: Sequence[str], metric: Sequence[Sequence[Fraction]], basepoint: int = 0
) -> PointedFiniteMetric:
    n = len(labels)
    if n == 0 or len(metric) != n or any(len(row) != n for row in metric):
        raise MalformedSpace(f"metric must be a {n}x{n} matrix")
    if not 0 <= basepoint < n:
        raise MalformedSpace(f"basepoint {basepoint} out of range")
    for x in range(n):
        if metric[x][x] != 0:
            raise MetricAxiomViolation((labels[x], labels[x]), "der(x,x) must be 0")
        for y in range(n):
            if metric[x][y] != metric[y][x] or metric[x][y] < 0:
                raise MetricAxiomViolation((labels[x], labels[y]), "not a symmetric nonnegative entry")
    return PointedFiniteMetric(tuple(labels), tuple(tuple(row) for row in metric), basepoint)


def pointed_metric(elements: Sequence[ForestElement], basepoint: int = 0) -> PointedFiniteMetric:
    """Pointed metric of finitely many elements of one component, under d."""
    n = len(elements)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        rows[i][j] = rows[j][i] = distance(elements[i], elements[j])
    return PointedFiniteMetric(tuple(f"e{i}" for i in range(n)), tuple(map(tuple, rows)), basepoint)


def check_path_axioms(p: PointedFiniteMetric, r: Fraction) -> bool:
    d = p.metric
    n = len(p.labels)
    if any(v > r for row in d for v in row):
        return False
    # both conditions are symmetric and hold trivially on repeated points
    for x, y, z in combinations(range(n), 3):
        a, b, c = d[x][y], d[x][z], d[y][z]
        if a + b + c != 2 * max(a, b, c):
            return False
    row = d[p.basepoint]
    for x, y in combinations(range(n), 2):
        near, far = sorted((row[x], row[y]))
        if near + d[x][y] != far:
            return False
    return True


# ---------- Parallel Paths ----------
@dataclass(frozen=True)
class ParallelBuild:
    x: BasePoint
    path: Path
    chain: Tuple[BasePoint, ...]


class ParallelPaths:
    """
    Finite-domain run of the parallel paths construction for (f, V, e).

    `regions[i]` is E_i, `O` is E_0, `steps[i]` is d(i) = der(f(r_i), f(r_{i+1})).
    """

    def __init__(self, space: BaseSpace, f: Path, V: EntourageIndex, e: Fraction):
        if e <= 0:
            raise RForestError(f"parallel paths needs e > 0, got {format_rational(e)}")
        self.space = space
        self.f = f
        self.V = V
        self.e = e
        self.j, self.delta = space.shrink(V, e)
        self.gamma = 1 + min(self.delta, e) / (2 * (f.length + 1))
        self.steps: Tuple[Fraction, ...] = tuple(
            space.der(f.values[i], f.values[i + 1]) for i in range(len(f.values) - 1)
        )
        self.regions: Tuple[Region, ...] = self._regions()
        logger.debug("parallel paths over %d steps, gamma=%s", len(self.steps), self.gamma)

    @property
    def O(self) -> Region:
        return self.regions[0]

    def _regions(self) -> Tuple[Region, ...]:
        sp, f, n = self.space, self.f, len(self.steps)
        whole = sp.whole()
        b = [whole] * (n + 1)
        c = [whole] * (n + 1)
        for i, step in enumerate(self.steps):
            if step > 0:
                b[i], c[i + 1] = sp.separate(f.values[i], f.values[i + 1], step / self.gamma)
        d = [
            sp.intersect(sp.intersect(sp.entourage_region(self.j, f.values[i]), b[i]), c[i])
            for i in range(n + 1)
        ]
        e_regions: List[Region] = [d[n]]
        for i in reversed(range(n)):
            nxt = e_regions[0]
            step = self.steps[i]
            target = sp.fatten(nxt, self.gamma * step) if step > 0 else nxt
            e_regions.insert(0, sp.intersect(d[i], target))
        return tuple(e_regions)

    def contains(self, x: BasePoint) -> bool:
        return self.space.member(x, self.O)

    def build(self, x: BasePoint) -> ParallelBuild:
        sp = self.space
        if not self.contains(x):
            raise PointOutsideO(sp.format_point(x))
        chain = [x]
        for i, step in enumerate(self.steps):
            prev = chain[-1]
            chain.append(sp.pick_within(self.regions[i + 1], prev, self.gamma * step) if step > 0 else prev)
        path = Path(tuple(self.gamma * r for r in self.f.breakpoints), tuple(chain))
        return ParallelBuild(x, path, tuple(chain))


def parallel_path(space: BaseSpace, f: Path, V: EntourageIndex, e: Fraction) -> ParallelPaths:
    return ParallelPaths(space, f, V, e)
