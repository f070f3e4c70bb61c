"""
Symbolic 1-types over desk models.

A desk model is a finite union of finite trees, one per finite-distance component.
Its types are PathType(m, f) for m in the model and f a path starting at tp(m),
plus InfiniteType(x) for the points x of X that no component reaches.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from base_space import BasePoint, BaseSpace
from errors import DuplicateComponentRoot, InvalidType
from forest import ForestElement, distance, distance_trunc, graft, max_label, point_element
from path_space import Path, path_meet, point_path
from tree_geometry import FiniteTree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeskModel:
    trees: Tuple[FiniteTree, ...]

    def tree_index(self, m: ForestElement) -> Optional[int]:
        for i, t in enumerate(self.trees):
            if m in t:
                return i
        return None

    @property
    def elements(self) -> Tuple[ForestElement, ...]:
        return tuple(e for t in self.trees for e in t.elements)


def make_desk_model(trees: Sequence[FiniteTree]) -> DeskModel:
    roots = set()
    for t in trees:
        if t.root in roots:
            raise DuplicateComponentRoot(t.root)
        roots.add(t.root)
    return DeskModel(tuple(trees))


@dataclass(frozen=True)
class PathType:
    m: ForestElement
    f: Path


@dataclass(frozen=True)
class InfiniteType:
    x: BasePoint


TypePoint = Union[PathType, InfiniteType]


def realized(m: ForestElement) -> PathType:
    return PathType(m, point_path(m.tip))


def check_type(t: TypePoint, model: DeskModel, space: BaseSpace) -> TypePoint:
    if isinstance(t, InfiniteType):
        if not space.contains(t.x):
            raise InvalidType(f"{t.x!r} is not a point of the base space")
        return t
    if model.tree_index(t.m) is None:
        raise InvalidType("m is not an element of the desk model")
    if t.f.root != t.m.tip:
        raise InvalidType("f must start at tp(m)")
    return t


def type_distance(t1: TypePoint, t2: TypePoint, model: DeskModel, space: BaseSpace) -> Fraction:
    """
    Type metric, clipped at diam X. For a shared m this is |f| + |f'| - 2|f n f'|;
    see DESIGN.md for how that relates to the published same-m clause.
    """
    diam = space.diameter
    check_type(t1, model, space)
    check_type(t2, model, space)
    if isinstance(t1, InfiniteType) and isinstance(t2, InfiniteType):
        return min(space.der(t1.x, t2.x), diam)
    if isinstance(t1, InfiniteType) or isinstance(t2, InfiniteType):
        return diam
    if model.tree_index(t1.m) != model.tree_index(t2.m):
        return diam
    if t1.m == t2.m:
        common = path_meet(t1.f, t2.f)
        return min(t1.f.length + t2.f.length - 2 * common.length, diam)
    return min(t1.f.length + distance(t1.m, t2.m) + t2.f.length, diam)


def _remainder(f: Path, k: int) -> Path:
    start = f.breakpoints[k]
    return Path(tuple(r - start for r in f.breakpoints[k:]), f.values[k:])


def realization_oracle(t1: TypePoint, t2: TypePoint, model: DeskModel, space: BaseSpace) -> Fraction:
    """Minimum distance between explicit grafted realizations of two path types in one tree."""
    if not (isinstance(t1, PathType) and isinstance(t2, PathType)):
        raise InvalidType("the realization oracle needs two path types")
    check_type(t1, model, space)
    check_type(t2, model, space)
    if model.tree_index(t1.m) != model.tree_index(t2.m):
        raise InvalidType("path types lie in different trees")
    stem_label = max_label(model.elements) + 1
    left, right = stem_label + 1, stem_label + 2
    if t1.m != t2.m:
        best = distance(graft(t1.m, t1.f, left), graft(t2.m, t2.f, right))
    else:
        common = path_meet(t1.f, t2.f)
        best = None
        for k in range(len(common.breakpoints)):
            stem = graft(t1.m, common.prefix(k), stem_label)
            a = graft(stem, _remainder(t1.f, k), left)
            b = graft(stem, _remainder(t2.f, k), right)
            d = distance(a, b)
            best = d if best is None else min(best, d)
    return min(best, space.diameter)


# ---------- the main theorem at desk scale ----------
def witness_pair(x: BasePoint, y: BasePoint, space: BaseSpace) -> Tuple[ForestElement, ForestElement]:
    k = point_element(x)
    if x == y:
        return k, k
    return k, ForestElement((Fraction(0), space.der(x, y)), (x, y), (0,))


@dataclass
class MainTheoremReport:
    pairs: int = 0
    element_pairs: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def s1_empty_check(
    space: BaseSpace,
    pairs: Sequence[Tuple[BasePoint, BasePoint]],
    element_pairs: Sequence[Tuple[ForestElement, ForestElement]] = (),
) -> MainTheoremReport:
    """
    Witness pairs realize der exactly, and no pair of elements is closer than the der of
    their tips. Together: the map from 1-types to X is an isometric bijection on the sample.
    """
    diam = space.diameter
    report = MainTheoremReport()
    for x, y in pairs:
        report.pairs += 1
        k, l = witness_pair(x, y, space)
        got = distance_trunc(k, l, diam)
        want = space.der(x, y)
        if got != want or k.tip != x or l.tip != y:
            report.violations.append({"check": "witness", "x": x, "y": y, "got": got, "want": want})
    for k, l in element_pairs:
        report.element_pairs += 1
        if space.der(k.tip, l.tip) > distance_trunc(k, l, diam):
            report.violations.append({"check": "lower-bound", "elements": [k, l]})
    return report
